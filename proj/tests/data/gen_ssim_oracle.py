"""Regenerates ssim_oracle.json with scikit-image as the reference implementation."""
import json

import numpy as np
import skimage
from skimage.metrics import structural_similarity

rng = np.random.default_rng(20240611)
pairs = []
for i in range(20):
    h = int(rng.integers(16, 40))
    w = int(rng.integers(16, 40))
    a = rng.random((h, w))
    kind = i % 4
    if kind == 0:
        b = rng.random((h, w))
    elif kind == 1:
        b = np.clip(a + 0.1 * rng.standard_normal((h, w)), 0, 1)
    elif kind == 2:
        yy, xx = np.mgrid[0:h, 0:w]
        a = 0.5 + 0.4 * np.sin(xx / 3.0 + i) * np.cos(yy / 4.0)
        b = 0.8 * a + 0.1 + 0.02 * rng.standard_normal((h, w))
    else:
        b = 1.0 - a
    s = structural_similarity(a, b, data_range=1.0, gaussian_weights=True, sigma=1.5,
                              use_sample_covariance=False)
    pairs.append({"height": h, "width": w, "a": a.ravel().tolist(), "b": b.ravel().tolist(), "ssim": float(s)})

with open("ssim_oracle.json", "w") as f:
    json.dump({"generator": "skimage " + skimage.__version__, "pairs": pairs}, f)
