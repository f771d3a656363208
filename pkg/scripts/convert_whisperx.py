#!/usr/bin/env python3

"""
Converts WhisperX output (segments with word timings) into a slidesync transcript.
With --dir every '*.json' in the input directory is converted, using the file stem
as the slide id.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Union

from slidesync.ingest.converters import whisperx_to_transcript
from slidesync.ingest.parsers import IngestError, write_transcript
from slidesync.utility.files import atomic_write_bytes
from slidesync.utility.logs import LOG_FORMAT, configure_logging

logging.basicConfig(format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def convert_file(whisperx_path: Union[str, Path], slide_id: str, out_path: Union[str, Path]) -> None:
    with open(whisperx_path, "r", encoding="utf-8") as f:
        whisperx = json.load(f)
    transcript, warnings = whisperx_to_transcript(whisperx, slide_id)
    for warning in warnings:
        logger.warning(str(warning))
    atomic_write_bytes(out_path, write_transcript(transcript))
    logger.info(f"Wrote {len(transcript.lines)} lines for slide {slide_id} to {out_path}")


def convert_dir(src_dir: Union[str, Path], out_dir: Union[str, Path]) -> int:
    """Convert every WhisperX file of src_dir; returns the number of files that failed."""
    failed = 0
    for whisperx_file in sorted(Path(src_dir).glob("*.json")):
        try:
            convert_file(whisperx_file, whisperx_file.stem, Path(out_dir) / whisperx_file.name)
        except (OSError, ValueError, IngestError) as e:
            logger.error(f"Error processing {whisperx_file}: {e}")
            failed += 1
    return failed


def main() -> None:
    """Main function to handle command line arguments and execute tasks."""
    parser = argparse.ArgumentParser(description='Converts WhisperX output into slidesync transcripts')
    parser.add_argument("-i", "--input", type=str, required=True,
                        help="WhisperX JSON file, or a directory of them with --dir")
    parser.add_argument("-d", "--dir", action='store_true',
                        help="convert every json file of the input directory")
    parser.add_argument("-s", "--slide_id", type=str,
                        help="id of the slide (single file mode)")
    parser.add_argument("-o", "--out", type=str, required=True,
                        help="transcript JSON to write, or output directory with --dir")
    parser.add_argument("-l", "--loglevel", type=str,
                        help="set log level")

    args = parser.parse_args()

    if args.loglevel:
        try:
            configure_logging(args.loglevel)
        except ValueError as e:
            parser.error(str(e))

    if args.dir:
        failed = convert_dir(args.input, args.out)
        if failed:
            logger.error(f"{failed} file(s) could not be converted")
            sys.exit(1)
    else:
        if not args.slide_id:
            parser.error("--slide_id is required when converting a single file")
        convert_file(args.input, args.slide_id, args.out)

if __name__ == "__main__":
    main()
    # RUN: python convert_whisperx.py -d -i whisperx/ -o transcripts/
