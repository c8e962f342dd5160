"""Gaussian-mixture probability laws on R^n.

The mixture family is the workhorse law of the package: it has an exact
log-density and score, it is closed under linear maps and under isotropic
Gaussian smoothing, and it can be projected onto the sign-symmetric class
by averaging reflections.  Everything here is pure and safe to call from
many threads; sampling takes an explicit seed.

All log-densities and entropies are in nats.
"""

import hashlib
import itertools
import json
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, solve_triangular
from scipy.special import logsumexp

from .errors import (
    DimensionMismatchError,
    DimensionTooLargeError,
    EmptyMixtureError,
    NegativeTimeError,
    NotPositiveDefiniteError,
    NotSymmetricBaseError,
    NotUnivariateError,
    RankDeficientError,
)

_EIG_FLOOR = 1e-12
_MERGE_DECIMALS = 12
_RANK_TOL = 1e-10


class GaussianMixture:
    """Finite Gaussian mixture with exact log-density, score, and sampling.

    Stores stacked component arrays plus cached Cholesky factors.  Use
    :func:`make_gaussian_mixture` to build one from ``(weight, mean, cov)``
    triples with full validation.
    """

    def __init__(self, weights, means, covs):
        self.weights = np.asarray(weights, dtype=float)
        self.means = np.asarray(means, dtype=float)
        self.covs = np.asarray(covs, dtype=float)
        self.dim = self.means.shape[1]
        self.n_components = self.weights.shape[0]
        self._log_weights = np.log(self.weights)
        self._chol = np.linalg.cholesky(self.covs)
        log_dets = 2.0 * np.sum(np.log(np.diagonal(self._chol, axis1=1, axis2=2)), axis=1)
        self._log_norms = 0.5 * log_dets + 0.5 * self.dim * np.log(2.0 * np.pi)

    @property
    def components(self):
        """Components as a list of ``(weight, mean, cov)`` triples."""
        return [
            (float(w), self.means[k].copy(), self.covs[k].copy())
            for k, w in enumerate(self.weights)
        ]

    def _as_batch(self, x):
        x = np.asarray(x, dtype=float)
        single = x.ndim == 1
        if single:
            x = x[None, :]
        if x.shape[1] != self.dim:
            raise DimensionMismatchError(
                f"points have dimension {x.shape[1]}, law has dimension {self.dim}"
            )
        return x, single

    def _component_log_density(self, x):
        out = np.empty((x.shape[0], self.n_components))
        for k in range(self.n_components):
            z = solve_triangular(self._chol[k], (x - self.means[k]).T, lower=True)
            out[:, k] = -0.5 * np.einsum("ij,ij->j", z, z) - self._log_norms[k]
        return out

    def log_density(self, x):
        """Log-density in nats, via log-sum-exp over components."""
        x, single = self._as_batch(x)
        lse = logsumexp(self._log_weights + self._component_log_density(x), axis=1)
        return float(lse[0]) if single else lse

    def score(self, x):
        """Gradient of the log-density, from posterior component weights."""
        x, single = self._as_batch(x)
        log_terms = self._log_weights + self._component_log_density(x)
        log_total = logsumexp(log_terms, axis=1, keepdims=True)
        resp = np.exp(log_terms - log_total)
        out = np.zeros_like(x)
        for k in range(self.n_components):
            grad_k = -cho_solve((self._chol[k], True), (x - self.means[k]).T).T
            out += resp[:, k, None] * grad_k
        return out[0] if single else out

    def sample(self, count, seed):
        """Draw ``count`` points; deterministic given ``(count, seed)``."""
        count = int(count)
        if count < 1:
            raise ValueError(f"count: must be >= 1 (got {count})")
        rng = np.random.default_rng(int(seed))
        comp = rng.choice(self.n_components, size=count, p=self.weights)
        z = rng.standard_normal((count, self.dim))
        out = np.empty((count, self.dim))
        for k in range(self.n_components):
            mask = comp == k
            if np.any(mask):
                out[mask] = self.means[k] + z[mask] @ self._chol[k].T
        return out

    def covariance(self):
        """Covariance matrix of the mixture law."""
        mean = self.weights @ self.means
        cov = np.zeros((self.dim, self.dim))
        for k in range(self.n_components):
            d = self.means[k] - mean
            cov += self.weights[k] * (self.covs[k] + np.outer(d, d))
        return cov

    def __repr__(self):
        return f"GaussianMixture(dim={self.dim}, n_components={self.n_components})"


class DensityModel:
    """Generic law on R^n assembled from callables.

    Exposes the same interface as :class:`GaussianMixture` (``dim``,
    ``log_density``, ``score``, ``sample``) so estimators accept either.
    """

    def __init__(self, dim, log_density, score, sampler):
        self.dim = int(dim)
        self._log_density = log_density
        self._score = score
        self._sampler = sampler

    def log_density(self, x):
        return self._log_density(np.asarray(x, dtype=float))

    def score(self, x):
        return self._score(np.asarray(x, dtype=float))

    def sample(self, count, seed):
        return np.asarray(self._sampler(int(count), int(seed)), dtype=float)


@dataclass(frozen=True)
class SymmetryReport:
    """Worst log-density mismatch between sign reflections of probe points."""

    max_violation: float
    probe_count: int
    verdict: bool
    tol: float


def make_gaussian_mixture(components):
    """Validate and build a :class:`GaussianMixture`.

    ``components`` is a nonempty list of ``(weight, mean, cov)``; scalars are
    accepted for 1-D laws.  Weights are normalized; covariances are forced
    symmetric and must have smallest eigenvalue above 1e-12.
    """
    if not components:
        raise EmptyMixtureError("mixture needs at least one component")
    weights, means, covs = [], [], []
    dim = None
    for k, (w, mean, cov) in enumerate(components):
        w = float(w)
        if not np.isfinite(w) or w <= 0.0:
            raise ValueError(f"component {k}: weight must be positive and finite (got {w})")
        mean = np.atleast_1d(np.asarray(mean, dtype=float))
        cov = np.atleast_2d(np.asarray(cov, dtype=float))
        if dim is None:
            dim = mean.shape[0]
        if mean.shape != (dim,) or cov.shape != (dim, dim):
            raise DimensionMismatchError(
                f"component {k}: mean shape {mean.shape}, cov shape {cov.shape}, "
                f"expected dimension {dim}"
            )
        cov = 0.5 * (cov + cov.T)
        smallest = float(np.linalg.eigvalsh(cov)[0])
        if smallest <= _EIG_FLOOR:
            raise NotPositiveDefiniteError(
                f"component {k}: smallest covariance eigenvalue {smallest:.3e} <= 1e-12"
            )
        weights.append(w)
        means.append(mean)
        covs.append(cov)
    weights = np.asarray(weights)
    return GaussianMixture(weights / weights.sum(), np.asarray(means), np.asarray(covs))


def push_forward_linear(mix, matrix):
    """Exact law of ``A X`` for a mixture ``X`` and full-row-rank ``A``."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2:
        raise DimensionMismatchError("projection matrix must be 2-D")
    k, n = matrix.shape
    if n != mix.dim:
        raise DimensionMismatchError(
            f"matrix has {n} columns, law has dimension {mix.dim}"
        )
    if k > n:
        raise RankDeficientError(f"matrix has more rows ({k}) than columns ({n})")
    smallest_sv = float(np.linalg.svd(matrix, compute_uv=False)[-1])
    if smallest_sv < _RANK_TOL:
        raise RankDeficientError(
            f"smallest singular value {smallest_sv:.3e} < 1e-10"
        )
    components = [
        (w, matrix @ mu, matrix @ cov @ matrix.T)
        for w, mu, cov in zip(mix.weights, mix.means, mix.covs)
    ]
    return make_gaussian_mixture(components)


def convolve_isotropic(mix, t):
    """Law of ``X + sqrt(t) Z`` with ``Z`` standard normal: covs become ``cov + t I``."""
    t = float(t)
    if t < 0.0:
        raise NegativeTimeError(f"t: must be >= 0 (got {t})")
    if t == 0.0:
        return GaussianMixture(mix.weights.copy(), mix.means.copy(), mix.covs.copy())
    eye = t * np.eye(mix.dim)
    return GaussianMixture(mix.weights.copy(), mix.means.copy(), mix.covs + eye)


def _merge_key(mean, cov):
    mean = np.round(mean + 0.0, _MERGE_DECIMALS)
    cov = np.round(cov + 0.0, _MERGE_DECIMALS)
    # +0.0 turns -0.0 into +0.0 so reflected zeros fingerprint identically
    return tuple(mean.tolist()) + tuple(cov.ravel().tolist())


def symmetrize(mix, max_dim=12):
    """Project a mixture onto the sign-symmetric class.

    Averages the 2^n coordinate sign reflections of every component and
    merges reflected duplicates by (mean, cov) fingerprint, so symmetric
    inputs are fixed points.  Guarded to n <= 12 because the component
    count multiplies by up to 2^n.
    """
    n = mix.dim
    if n > max_dim:
        raise DimensionTooLargeError(
            f"dim {n} > {max_dim}: reflection count 2^n is too large"
        )
    merged = {}
    scale = 1.0 / (1 << n)
    for w, mu, cov in zip(mix.weights, mix.means, mix.covs):
        for signs in itertools.product((1.0, -1.0), repeat=n):
            s = np.asarray(signs)
            mean_r = s * mu
            cov_r = cov * np.outer(s, s)
            key = _merge_key(mean_r, cov_r)
            if key in merged:
                merged[key][0] += w * scale
            else:
                merged[key] = [w * scale, mean_r, cov_r]
    items = sorted(merged.items(), key=lambda kv: kv[0])
    return make_gaussian_mixture([(w, m, c) for w, m, c in (v for _, v in items)])


def check_symmetry(d, probes=32, seed=0, tol=1e-8):
    """Compare log f at every sign reflection of sampled probe points.

    Reports the largest deviation of ``log f(s * x)`` from ``log f(|x|)``
    over all sign patterns ``s``; a symmetric law shows only rounding noise.
    """
    probes = int(probes)
    if probes < 1:
        raise ValueError(f"probes: must be >= 1 (got {probes})")
    n = d.dim
    x = np.asarray(d.sample(probes, seed), dtype=float)
    patterns = np.array(list(itertools.product((1.0, -1.0), repeat=n)))
    reflected = np.abs(x)[:, None, :] * patterns[None, :, :]
    flat = reflected.reshape(-1, n)
    lf = np.asarray(d.log_density(flat)).reshape(probes, -1)
    lf_abs = np.asarray(d.log_density(np.abs(x)))
    max_violation = float(np.max(np.abs(lf - lf_abs[:, None])))
    return SymmetryReport(max_violation, probes, bool(max_violation <= tol), float(tol))


ROTATION_2D = np.array([[1.0, -1.0], [1.0, 1.0]]) / np.sqrt(2.0)


def rotated_iid_construction(base, probes=64, seed=0, tol=1e-8):
    """2-D law ``X = A Z`` with ``Z`` a pair of i.i.d. copies of ``base``.

    ``A`` is the 45-degree rotation, so ``(X1 + X2)/sqrt(2)`` recovers the
    base law exactly and the joint density factorizes as
    ``f(x) = f_base((x1+x2)/sqrt 2) * f_base((x1-x2)/sqrt 2)``.
    Mixture bases stay mixtures (product components, then pushforward).
    """
    if base.dim != 1:
        raise NotUnivariateError(f"base law must be 1-D (got dim {base.dim})")
    report = check_symmetry(base, probes=probes, seed=seed, tol=tol)
    if not report.verdict:
        raise NotSymmetricBaseError(
            f"base law violates symmetry by {report.max_violation:.3e} (tol {tol})"
        )
    if isinstance(base, GaussianMixture):
        product = [
            (wi * wj, np.array([mi[0], mj[0]]), np.diag([ci[0, 0], cj[0, 0]]))
            for wi, mi, ci in zip(base.weights, base.means, base.covs)
            for wj, mj, cj in zip(base.weights, base.means, base.covs)
        ]
        return push_forward_linear(make_gaussian_mixture(product), ROTATION_2D)

    def log_density(x):
        single = x.ndim == 1
        x2 = np.atleast_2d(x)
        z = x2 @ ROTATION_2D  # rows of z are A^T x
        lf = np.asarray(base.log_density(z[:, :1])) + np.asarray(base.log_density(z[:, 1:]))
        return float(lf[0]) if single else lf

    def score(x):
        single = x.ndim == 1
        x2 = np.atleast_2d(x)
        z = x2 @ ROTATION_2D
        rho = np.column_stack(
            [np.asarray(base.score(z[:, :1])).ravel(), np.asarray(base.score(z[:, 1:])).ravel()]
        )
        out = rho @ ROTATION_2D.T
        return out[0] if single else out

    def sampler(count, seed_):
        z = np.asarray(base.sample(2 * count, seed_)).reshape(count, 2)
        return z @ ROTATION_2D.T

    return DensityModel(2, log_density, score, sampler)


def sample(d, count, seed):
    """Draw ``count`` points from any law exposing the sampling interface."""
    return d.sample(count, seed)


# --- JSON round-trip (17 significant digits, bit-exact) -------------------

def _fmt(x):
    return format(float(x), ".17g")


def mixture_to_json(mix):
    """Serialize to ``{dim, components: [{weight, mean, cov}]}`` with 17-digit decimals."""
    parts = []
    for w, mean, cov in mix.components:
        mean_txt = ", ".join(_fmt(v) for v in mean)
        cov_txt = ", ".join(
            "[" + ", ".join(_fmt(v) for v in row) + "]" for row in cov
        )
        parts.append(
            '{"weight": %s, "mean": [%s], "cov": [%s]}' % (_fmt(w), mean_txt, cov_txt)
        )
    return '{"dim": %d, "components": [%s]}' % (mix.dim, ", ".join(parts))


def mixture_from_json(text):
    """Parse a mixture specification written by :func:`mixture_to_json`."""
    obj = json.loads(text)
    components = [(c["weight"], c["mean"], c["cov"]) for c in obj["components"]]
    mix = make_gaussian_mixture(components)
    if mix.dim != int(obj["dim"]):
        raise DimensionMismatchError(
            f"declared dim {obj['dim']} != component dim {mix.dim}"
        )
    return mix


def law_fingerprint(mix):
    """Stable hex digest of the canonical mixture JSON."""
    return hashlib.sha256(mixture_to_json(mix).encode("ascii")).hexdigest()[:16]
