"""Synthetic complementary two-view datasets, OOD sampling, CSV I/O.

Each class gets a Gaussian prototype in a "local" view and a "global"
view; samples concatenate both views plus isotropic noise.  The
complementarity knob makes a fraction of classes collide in one view
while staying separated in the other, so neither view alone can
distinguish every class but the concatenation can.
"""

import json
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .errors import ValidationError

SPLITS = ("train", "val", "test")
PROTO_MIN_DIST = 3.0
OOD_SIGMA_FACTOR = 10.0


@dataclass(frozen=True)
class SyntheticSpec:
    n_classes: int = 5
    n_per_class: tuple = (200, 40, 80)
    dim_local: int = 16
    dim_global: int = 16
    complementarity: float = 0.5
    noise_sigma: float = 1.0
    seed: int = 7

    def __post_init__(self):
        if self.n_classes < 2:
            raise ValidationError("need at least 2 classes")
        if self.dim_local < 2 or self.dim_global < 2:
            raise ValidationError("view dimensions must be >= 2")
        if not 0.0 <= self.complementarity <= 1.0:
            raise ValidationError("complementarity must lie in [0, 1]")
        if self.noise_sigma <= 0.0:
            raise ValidationError("noise_sigma must be > 0")
        if len(self.n_per_class) != 3 or any(n < 0 for n in self.n_per_class):
            raise ValidationError("n_per_class must be three nonnegative counts")
        object.__setattr__(self, "n_per_class", tuple(int(n) for n in self.n_per_class))

    @property
    def dim(self):
        return self.dim_local + self.dim_global

    def to_json(self):
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        doc["n_per_class"] = tuple(doc["n_per_class"])
        return cls(**doc)


@dataclass
class Dataset:
    x: np.ndarray
    y: np.ndarray
    split: np.ndarray
    spec: SyntheticSpec = None

    @property
    def n_classes(self):
        if self.spec is not None:
            return self.spec.n_classes
        return int(self.y.max()) + 1 if self.y.size else 0

    @property
    def dim(self):
        return self.x.shape[1]

    def split_arrays(self, split):
        mask = self.split == split
        return self.x[mask], self.y[mask]


def collision_pairs(spec):
    """Class pairs forced to share a prototype in one view.

    round(complementarity * K) classes are single-view-distinguishable;
    they are grouped into disjoint pairs (0,1), (2,3), ... assigned
    alternately to local-view and global-view collisions.  Infeasible
    when the affected classes exceed the available disjoint pairs, or
    when full complementarity cannot host both collision patterns.
    """
    k = spec.n_classes
    n_affected = int(np.floor(spec.complementarity * k + 0.5))
    n_pairs = n_affected // 2
    if n_affected > 2 * (k // 2):
        raise ValidationError(
            f"complementarity {spec.complementarity} needs {n_affected} paired "
            f"classes but only {2 * (k // 2)} can be paired for K={k}"
        )
    if spec.complementarity == 1.0 and n_pairs < 2:
        raise ValidationError(
            "complementarity 1.0 requires both a local and a global collision "
            f"pattern, impossible for K={k}"
        )
    local_pairs, global_pairs = [], []
    for idx in range(n_pairs):
        pair = (2 * idx, 2 * idx + 1)
        (local_pairs if idx % 2 == 0 else global_pairs).append(pair)
    return local_pairs, global_pairs


def _spread_prototypes(rng, k, dim):
    protos = rng.normal(0.0, 1.0, (k, dim))
    # redraw any prototype that lands too close to an earlier one
    for i in range(1, k):
        for _ in range(1000):
            d = np.linalg.norm(protos[:i] - protos[i], axis=1).min()
            if d >= PROTO_MIN_DIST:
                break
            protos[i] = rng.normal(0.0, 1.0, dim)
    return protos


def prototypes(spec):
    """Per-class (local, global) prototype matrices, pure in the spec."""
    rng = np.random.default_rng(spec.seed)
    local = _spread_prototypes(rng, spec.n_classes, spec.dim_local)
    glob = _spread_prototypes(rng, spec.n_classes, spec.dim_global)
    local_pairs, global_pairs = collision_pairs(spec)
    for a, b in local_pairs:
        local[b] = local[a]
    for a, b in global_pairs:
        glob[b] = glob[a]
    return local, glob


def generate(spec):
    """Deterministic dataset draw: same spec, byte-identical arrays."""
    local, glob = prototypes(spec)
    rng = np.random.default_rng([spec.seed, 1])
    xs, ys, splits = [], [], []
    for split, n in zip(SPLITS, spec.n_per_class):
        for cls in range(spec.n_classes):
            noise_l = rng.normal(0.0, spec.noise_sigma, (n, spec.dim_local))
            noise_g = rng.normal(0.0, spec.noise_sigma, (n, spec.dim_global))
            xs.append(np.hstack([local[cls] + noise_l, glob[cls] + noise_g]))
            ys.append(np.full(n, cls, dtype=np.int64))
            splits.append(np.full(n, split, dtype=object))
    return Dataset(
        x=np.vstack(xs),
        y=np.concatenate(ys),
        split=np.concatenate(splits).astype(str),
        spec=spec,
    )


def sample_ood(spec, count):
    """Broad off-distribution draws for uncertainty analysis.

    Mean sits beyond every prototype and the spread is 10x the training
    noise, so samples land far outside all class clusters; never used in
    training.
    """
    if count == 0:
        return np.zeros((0, spec.dim))
    local, glob = prototypes(spec)
    concat = np.hstack([local, glob])
    max_norm = np.linalg.norm(concat, axis=1).max()
    direction = np.ones(spec.dim) / np.sqrt(spec.dim)
    center = direction * (max_norm + OOD_SIGMA_FACTOR * spec.noise_sigma)
    rng = np.random.default_rng([spec.seed, 2])
    return center + rng.normal(
        0.0, OOD_SIGMA_FACTOR * spec.noise_sigma, (count, spec.dim)
    )


def _csv_header(dim):
    return ",".join(f"f{i}" for i in range(dim)) + ",label,split"


def save_csvs(dataset, outdir):
    """Write train/val/test CSVs plus the generating spec as spec.json."""
    outdir.mkdir(parents=True, exist_ok=True)
    dim = dataset.dim
    for split in SPLITS:
        mask = dataset.split == split
        lines = [_csv_header(dim)]
        for row, label in zip(dataset.x[mask], dataset.y[mask]):
            feats = ",".join(repr(float(v)) for v in row)
            lines.append(f"{feats},{int(label)},{split}")
        (outdir / f"{split}.csv").write_text("\n".join(lines) + "\n")
    if dataset.spec is not None:
        (outdir / "spec.json").write_text(dataset.spec.to_json() + "\n")


def load_csv(path):
    """Parse one CSV of the f0..fD,label,split schema with full validation."""
    text = path.read_text()
    lines = text.splitlines()
    if not lines:
        raise ValidationError(f"{path}: empty file, expected a header row")
    header = lines[0].split(",")
    if len(header) < 3 or header[-2] != "label" or header[-1] != "split":
        raise ValidationError(f"{path}: header must end with 'label,split'")
    dim = len(header) - 2
    if [h for h in header[:dim]] != [f"f{i}" for i in range(dim)]:
        raise ValidationError(f"{path}: feature columns must be f0..f{dim - 1}")
    xs, ys, splits = [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != dim + 2:
            raise ValidationError(
                f"{path}:{lineno}: expected {dim + 2} fields, got {len(parts)}"
            )
        try:
            feats = np.array([float(v) for v in parts[:dim]])
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: bad feature value ({exc})") from exc
        if not np.all(np.isfinite(feats)):
            raise ValidationError(f"{path}:{lineno}: non-finite feature value")
        try:
            label = int(parts[dim])
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: bad label ({exc})") from exc
        if label < 0:
            raise ValidationError(f"{path}:{lineno}: label must be >= 0")
        split = parts[dim + 1]
        if split not in SPLITS:
            raise ValidationError(f"{path}:{lineno}: unknown split token {split!r}")
        xs.append(feats)
        ys.append(label)
        splits.append(split)
    if not xs:
        warnings.warn(f"{path}: no data rows after header")
        return Dataset(
            x=np.zeros((0, dim)), y=np.zeros(0, dtype=np.int64),
            split=np.zeros(0, dtype=str), spec=None,
        )
    return Dataset(
        x=np.vstack(xs),
        y=np.array(ys, dtype=np.int64),
        split=np.array(splits),
        spec=None,
    )


def load_dir(path):
    """Load a generated dataset directory (three CSVs + optional spec.json)."""
    parts = [load_csv(path / f"{split}.csv") for split in SPLITS]
    spec = None
    spec_path = path / "spec.json"
    if spec_path.exists():
        spec = SyntheticSpec.from_json(spec_path.read_text())
    return Dataset(
        x=np.vstack([p.x for p in parts]),
        y=np.concatenate([p.y for p in parts]),
        split=np.concatenate([p.split for p in parts]),
        spec=spec,
    )
