from .manifest import (DatasetEntry, DatasetHelper, DatasetManifest, ManifestEntry, ManifestError,
                       load_manifest, parse_manifest, write_manifest)
from .parsers import (IngestError, IngestWarning, ParseError, SchemaError, parse_ground_truth,
                      parse_slide_layout, parse_transcript, read_alignment, write_alignment,
                      write_ground_truth, write_slide_layout, write_transcript)

__all__ = [
    'DatasetEntry', 'DatasetHelper', 'DatasetManifest', 'ManifestEntry', 'ManifestError',
    'load_manifest', 'parse_manifest', 'write_manifest',
    'IngestError', 'IngestWarning', 'ParseError', 'SchemaError', 'parse_ground_truth',
    'parse_slide_layout', 'parse_transcript', 'read_alignment', 'write_alignment',
    'write_ground_truth', 'write_slide_layout', 'write_transcript',
]
