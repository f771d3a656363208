#!/usr/bin/env python3

"""
Converts an AWS Textract layout-analysis response into a slidesync slide layout.
The slide image is opened only to read its pixel size.
"""

import argparse
import json
import logging
from pathlib import Path
from typing import Union

from PIL import Image

from slidesync.ingest.converters import textract_to_slide
from slidesync.ingest.parsers import write_slide_layout
from slidesync.utility.files import atomic_write_bytes
from slidesync.utility.logs import LOG_FORMAT, configure_logging

logging.basicConfig(format=LOG_FORMAT)
logger = logging.getLogger(__name__)


def convert(textract_path: Union[str, Path], slide_id: str, image_path: Union[str, Path],
            out_path: Union[str, Path]) -> None:
    with open(textract_path, "r", encoding="utf-8") as f:
        textract = json.load(f)
    with Image.open(image_path) as image:
        image_size = image.size
    slide, warnings = textract_to_slide(textract, slide_id, str(image_path), image_size)
    for warning in warnings:
        logger.warning(str(warning))
    atomic_write_bytes(out_path, write_slide_layout(slide))
    logger.info(f"Wrote {len(slide.regions)} regions for slide {slide_id} to {out_path}")


def main() -> None:
    """Main function to handle command line arguments and execute tasks."""
    parser = argparse.ArgumentParser(description='Converts a Textract response into a slide layout')
    parser.add_argument("-i", "--input", type=str, required=True,
                        help="Textract JSON response (AnalyzeDocument with LAYOUT)")
    parser.add_argument("-s", "--slide_id", type=str, required=True,
                        help="id of the slide")
    parser.add_argument("-m", "--image", type=str, required=True,
                        help="slide raster the response was computed on")
    parser.add_argument("-o", "--out", type=str, required=True,
                        help="slide layout JSON to write")
    parser.add_argument("-l", "--loglevel", type=str,
                        help="set log level")

    args = parser.parse_args()

    if args.loglevel:
        try:
            configure_logging(args.loglevel)
        except ValueError as e:
            parser.error(str(e))

    convert(args.input, args.slide_id, args.image, args.out)

if __name__ == "__main__":
    main()
    # RUN: python convert_textract.py -i textract/s01.json -s s01 -m images/s01.png -o layouts/s01.json
