import json

import numpy as np

# Reduced resolution for properties that do not depend on the grid.
SMALL_GRID = {
    "n_circle": 512,
    "n_angles": 128,
    "n_radial": 16,
    "delta_min": 1e-3,
    "arc_depth": 6,
    "w_depth": 5,
    "w_angles": 16,
    "order": 4,
}


def disk_points(n, seed=0, radius=0.95):
    """Random points uniformly distributed in the disk |z| < radius."""
    rng = np.random.default_rng(seed)
    return radius * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))


def finite_difference(f, z, step=1e-6):
    """Central difference of a spec along the real axis."""
    return (f.evaluate(z + step) - f.evaluate(z - step)) / (2 * step)


def write_job(directory, data, name="job.json"):
    path = directory / name
    path.write_text(json.dumps(data))
    return str(path)
