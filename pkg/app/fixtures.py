"""
Embedded datasets and their preset effect specs and prediction points

hald-augmented  Hald cement data plus a noise column x5
hald-renamed    Hald data renamed so both correlated pairs are already APC
sim-xd          the fixed 12 x 6 simulation design; y is drawn from the
                simulation model with the configured seed
"""
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from app.exceptions import UnknownFixture
from app.models import Dataset, SimConfig
from app.services.data import scaling_info, unstandardize_point
from app.services.simulate import X_NAMES, generate_response
from app.validators import EffectSpecEntry

HALD_AUGMENTED = np.array([
    # y, x1, x2, x3, x4, x5
    [78.5, 7, 26, 6, 60, 10.772436],
    [74.3, 1, 29, 15, 52, 11.059010],
    [104.3, 11, 56, 8, 20, 9.872811],
    [87.6, 11, 31, 8, 47, 7.577711],
    [95.9, 7, 52, 6, 33, 8.864993],
    [109.2, 11, 55, 9, 22, 10.749495],
    [102.7, 3, 71, 17, 6, 7.701774],
    [72.5, 1, 31, 22, 44, 12.146993],
    [93.1, 2, 54, 18, 22, 12.297858],
    [115.9, 21, 47, 4, 26, 14.294489],
    [83.8, 1, 40, 23, 34, 8.218245],
    [113.3, 11, 66, 9, 12, 9.845383],
    [109.4, 10, 68, 8, 12, 8.680111],
])

HALD_RENAMED = np.array([
    # y, x1, x2, x3, x4
    [78.5, 7, -6, 26, -60],
    [74.3, 1, -15, 29, -52],
    [104.3, 11, -8, 56, -20],
    [87.6, 11, -8, 31, -47],
    [95.9, 7, -6, 52, -33],
    [109.2, 11, -9, 55, -22],
    [102.7, 3, -17, 71, -6],
    [72.5, 1, -22, 31, -44],
    [93.1, 2, -18, 54, -22],
    [115.9, 21, -4, 47, -26],
    [83.8, 1, -23, 40, -34],
    [113.3, 11, -9, 66, -12],
    [109.4, 10, -8, 68, -12],
])

XD = np.array([
    [1.33247194, 2.38707243, 0.35045404, 1.1355655, -1.66362725, 0.82837127],
    [0.82081027, -0.04932373, -1.81765385, -3.3503997, 1.76569602, 0.43909989],
    [-0.29595458, -0.27168960, 0.04750956, 0.7710956, 0.50504306, -1.07289930],
    [-0.45687467, -0.96368003, 0.79497781, 1.6863252, -0.22227593, -1.92318639],
    [0.62474607, 0.01700248, 1.68893821, 2.4008808, -0.82581051, -2.15037060],
    [0.05469564, 0.40265862, -0.71020015, -1.1235155, -0.80982723, 1.37227484],
    [0.30456557, 0.37345144, -1.47371005, -1.7492288, 0.93406886, 0.82796429],
    [0.48008957, 1.35339554, -0.42040266, 0.2643296, -0.01488494, 3.73023350],
    [-0.68291613, -0.56048771, 1.58447035, 2.3769584, -0.90045687, -0.57890494],
    [1.61956212, 2.33300610, 0.09129845, 0.2557185, -0.36214200, 0.07201769],
    [2.84612051, 3.24706230, -0.95907566, -1.1348475, -0.31756247, -0.26719905],
    [0.60236279, 0.73704811, 0.86278183, 1.0274744, 1.91966047, -0.32319049],
])

HALD_POINTS: List[Tuple[str, Tuple[float, ...]]] = [
    ("x1", (7.46153, -11.76923, 48.15385, -30.00000)),
    ("x2", (3.18232, -15.98495, 64.86423, -10.86569)),
    ("x3", (7.25776, -11.10359, 46.53671, -28.84034)),
    ("x4", (-4.76478, -25.08204, 75.10608, -1.00862)),
    ("x5", (13.57470, -18.42563, 75.10608, -47.39482)),
]

SIM_STANDARDIZED_POINTS: List[Tuple[str, Tuple[float, ...]]] = [
    # standardized x1..x4; x5 and x6 stay on their raw scale
    ("x1", (0.0, 0.0, 0.0, 0.0)),
    ("x2", (0.10, 0.12, 0.20, 0.22)),
    ("x3", (0.30, 0.10, 0.20, 0.50)),
]
SIM_FIXED_TAIL = (1.0, 2.0)


def _sim_points() -> List[Tuple[str, Tuple[float, ...]]]:
    info = scaling_info(Dataset(predictor_names=X_NAMES, X=XD, y=np.zeros(XD.shape[0])))
    head = len(SIM_STANDARDIZED_POINTS[0][1])
    points = []
    for label, coords in SIM_STANDARDIZED_POINTS:
        raw = unstandardize_point(np.concatenate([coords, np.zeros(len(SIM_FIXED_TAIL))]), info)
        raw[head:] = SIM_FIXED_TAIL
        points.append((label, tuple(float(v) for v in raw)))
    return points


SIM_POINTS = _sim_points()

HALD_EFFECTS = [
    EffectSpecEntry(label="xi1", group=["x1", "x2"], weights="vwa"),
    EffectSpecEntry(label="xi2", group=["x3", "x4"], weights="vwa"),
    EffectSpecEntry(label="xi3", group=["x1", "x2"], weights="avg"),
    EffectSpecEntry(label="xi4", group=["x3", "x4"], weights="avg"),
    EffectSpecEntry(label="xi5", group=["x1", "x2"], weights=[0.5, -0.5]),
    EffectSpecEntry(label="xi6", group=["x3", "x4"], weights=[0.5, -0.5]),
    EffectSpecEntry(label="xi7", group=["x1", "x2"], weights=[0.0, 1.0]),
    EffectSpecEntry(label="xi8", group=["x3", "x4"], weights=[1.0, 0.0]),
]

HALD_AUGMENTED_EFFECTS = [
    EffectSpecEntry(label="vwa{x1,x3}", group=["x1", "x3"], weights="vwa"),
    EffectSpecEntry(label="vwa{x2,x4}", group=["x2", "x4"], weights="vwa"),
    EffectSpecEntry(label="avg{x1,x3}", group=["x1", "x3"], weights="avg"),
    EffectSpecEntry(label="avg{x2,x4}", group=["x2", "x4"], weights="avg"),
    EffectSpecEntry(label="beta5", group=["x5"], weights="avg"),
]

SIM_EFFECTS = [
    EffectSpecEntry(label="xi1", group=["x1", "x2"], weights="vwa"),
    EffectSpecEntry(label="xi2", group=["x3", "x4"], weights="vwa"),
    EffectSpecEntry(label="xi3", group=["x1", "x2"], weights=[0.5, -0.5]),
    # x5 and x6 are uncorrelated, so this is a plain contrast of the two columns
    EffectSpecEntry(label="xi4", columns=["x5", "x6"], weights=[0.5, -0.5]),
    EffectSpecEntry(label="xi5", group=["x3", "x4"], weights="avg"),
    EffectSpecEntry(label="xi6", group=["x3", "x4"], weights="vwa", delta=0.05),
]


def _from_rows(rows: np.ndarray, names) -> Dataset:
    return Dataset(predictor_names=tuple(names), X=rows[:, 1:], y=rows[:, 0])


def hald_augmented() -> Dataset:
    return _from_rows(HALD_AUGMENTED, ("x1", "x2", "x3", "x4", "x5"))


def hald_renamed() -> Dataset:
    return _from_rows(HALD_RENAMED, ("x1", "x2", "x3", "x4"))


def sim_xd(seed: Optional[int] = None) -> Dataset:
    cfg = SimConfig() if seed is None else SimConfig(seed=seed)
    y = generate_response(XD, cfg.beta_vector, cfg.sigma, cfg.seed)
    return Dataset(predictor_names=X_NAMES, X=XD, y=y)


FIXTURES: Dict[str, Callable[..., Dataset]] = {
    "hald-augmented": hald_augmented,
    "hald-renamed": hald_renamed,
    "sim-xd": sim_xd,
}

EFFECT_PRESETS: Dict[str, List[EffectSpecEntry]] = {
    "hald-augmented": HALD_AUGMENTED_EFFECTS,
    "hald-renamed": HALD_EFFECTS,
    "sim-xd": SIM_EFFECTS,
}

POINT_PRESETS: Dict[str, List[Tuple[str, Tuple[float, ...]]]] = {
    "hald-renamed": HALD_POINTS,
    "sim-xd": SIM_POINTS,
}


def load_fixture(name: str, seed: Optional[int] = None) -> Dataset:
    """
    Embedded dataset by name

    Raises:
        UnknownFixture: name is not one of FIXTURES
    """
    if name not in FIXTURES:
        raise UnknownFixture(f"Unknown fixture {name!r}; choose from {sorted(FIXTURES)}")
    if name == "sim-xd":
        return sim_xd(seed)
    return FIXTURES[name]()
