from .alignment import AlignmentResult, Diagnostic, GroundTruth, RegionMatch
from .policy import ThresholdPolicy
from .region import Region, RegionKind
from .slide import SlideDocument
from .transcript import TimedWord, Transcript, TranscriptLine
from .validation import validate_dataset
from .violation import Violation

__all__ = [
    'AlignmentResult', 'Diagnostic', 'GroundTruth', 'RegionMatch', 'ThresholdPolicy',
    'Region', 'RegionKind', 'SlideDocument', 'TimedWord', 'Transcript', 'TranscriptLine',
    'validate_dataset', 'Violation',
]
