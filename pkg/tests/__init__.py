import logging
import numpy as np
import stereodepth

formatter = logging.Formatter('%(levelname)s: %(message)s')
handler = logging.StreamHandler()
handler.setLevel(logging.WARNING)
handler.setFormatter(formatter)
logger = logging.getLogger(__name__)
logger.addHandler(handler)
logger.setLevel(logging.INFO)
logging.getLogger(stereodepth.PACKAGE).addHandler(logging.NullHandler())


def random_image(rng, width, height):
    return stereodepth.RgbImage(width, height, rng.integers(0, 256, size=(height, width, 3)))


def distinct_row(width):
    """Pixels pairwise more than 19 apart in SAD, width <= 10."""
    return [(25 * i, 0, 0) for i in range(width)]
