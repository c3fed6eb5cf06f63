from typing import Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from dyadic_measure.measure import MeasureTable  # noqa: E402
from wavelet_packets.cascade import CascadeSamples  # noqa: E402

# fixed ids and no timestamp keep repeated renders byte-identical
plt.rcParams["svg.hashsalt"] = "qmlab"


def emit_svg(data: Union[MeasureTable, CascadeSamples], path:str) -> str:
    """
    Render a measure table as a density bar chart or cascade samples as a curve

    Bars have width N^{-k} and height mass * N^k.

    :param data: what to draw
    :type data: MeasureTable or CascadeSamples

    :param path: output file
    :type path: str

    :raises OSError: path not writable

    :return: path
    :rtype: str
    """
    fig, ax = plt.subplots(figsize=(8, 4))
    try:
        if isinstance(data, MeasureTable):
            width = 1.0 / data.base ** data.depth
            left = np.arange(len(data)) * width
            ax.bar(left, data.densities(), width=width, align="edge", edgecolor="black", linewidth=0.3)
            ax.set_xlim(0, 1)
            ax.set_xlabel("x")
            ax.set_ylabel("mass / length")
            ax.set_title(f"depth {data.depth}, N = {data.base}")
        else:
            ax.step(data.x, np.real(data.values), where="post")
            ax.set_xlabel("x")
            ax.set_ylabel(f"phi_{data.n}(x)")
            ax.set_title(f"cascade, {data.iterations} iterations, {data.resolution} samples per unit")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
    finally:
        plt.close(fig)
    return path
