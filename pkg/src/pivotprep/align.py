"""Alignment and regularization losses over contextual embeddings.

Inputs are per-token embedding sequences for a source sentence, its
pseudo-translated target, and frozen reference copies of both.  The
alignment term pulls together the vectors at aligned words' last
subword tokens; the regularization term penalizes every token's
deviation from its reference.  Analytic gradients are provided for the
squared-error loss and for an in-batch contrastive variant (softmax
over cosine similarities, negatives drawn from all other target word
ends in the batch), and both can be verified against central finite
differences.

Per-pair terms accumulate through math.fsum so batch losses are
additive to tight tolerance.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np


class AlignmentError(ValueError):
    pass


DEFAULT_TEMPERATURE = 0.1


@dataclass(frozen=True)
class EmbeddingSequence:
    vectors: np.ndarray  # (tokens, dim) float64
    dim: int

    @classmethod
    def from_rows(cls, rows) -> "EmbeddingSequence":
        arr = np.asarray(rows, dtype=np.float64)
        if arr.ndim != 2:
            raise AlignmentError(f"embedding sequence must be 2-D, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise AlignmentError("embedding sequence contains non-finite values")
        return cls(vectors=arr, dim=arr.shape[1])


@dataclass(frozen=True)
class AlignedEmbeddingPair:
    src: EmbeddingSequence
    tgt: EmbeddingSequence
    src_ref: EmbeddingSequence
    tgt_ref: EmbeddingSequence
    src_word_ends: tuple[int, ...]
    tgt_word_ends: tuple[int, ...]


@dataclass(frozen=True)
class LossReport:
    align_loss: float
    reg_loss: float
    total: float
    reg_coefficient: float


@dataclass(frozen=True)
class PairGradients:
    src: np.ndarray
    tgt: np.ndarray


def _validate_pair(pair: AlignedEmbeddingPair, index: int) -> None:
    s, t = pair.src.vectors, pair.tgt.vectors
    s0, t0 = pair.src_ref.vectors, pair.tgt_ref.vectors
    if s.shape != s0.shape or t.shape != t0.shape:
        raise AlignmentError(f"pair {index}: reference shape does not match current shape")
    if s.shape[1] != t.shape[1]:
        raise AlignmentError(f"pair {index}: source and target dimensions differ")
    if len(pair.src_word_ends) != len(pair.tgt_word_ends):
        raise AlignmentError(f"pair {index}: word-end lists must have equal length")
    for name, ends, n in (
        ("source", pair.src_word_ends, s.shape[0]),
        ("target", pair.tgt_word_ends, t.shape[0]),
    ):
        for idx in ends:
            if not 0 <= idx < n:
                raise AlignmentError(f"pair {index}: {name} word-end index {idx} out of range")


def _reg_term(pair: AlignedEmbeddingPair) -> float:
    ds = pair.src.vectors - pair.src_ref.vectors
    dt = pair.tgt.vectors - pair.tgt_ref.vectors
    return float(np.sum(ds * ds) + np.sum(dt * dt))


def mse_alignment_loss(batch, reg_coefficient: float = 1.0) -> LossReport:
    """Squared-distance alignment loss plus reference regularization.

    align = sum over pairs and aligned words of the squared distance
    between the two word-end vectors; reg = sum over every token of the
    squared distance to its reference; total = align + c * reg.
    """
    if not batch:
        raise AlignmentError("batch must be non-empty")
    align_terms = []
    reg_terms = []
    for index, pair in enumerate(batch):
        _validate_pair(pair, index)
        diff = pair.src.vectors[list(pair.src_word_ends)] - pair.tgt.vectors[list(pair.tgt_word_ends)]
        align_terms.append(float(np.sum(diff * diff)))
        reg_terms.append(_reg_term(pair))
    align = math.fsum(align_terms)
    reg = math.fsum(reg_terms)
    return LossReport(
        align_loss=align,
        reg_loss=reg,
        total=align + reg_coefficient * reg,
        reg_coefficient=reg_coefficient,
    )


def mse_alignment_grad(batch, reg_coefficient: float = 1.0) -> list[PairGradients]:
    """Analytic gradient of mse_alignment_loss's total w.r.t. src and tgt."""
    if not batch:
        raise AlignmentError("batch must be non-empty")
    grads: list[PairGradients] = []
    c = reg_coefficient
    for index, pair in enumerate(batch):
        _validate_pair(pair, index)
        gs = 2.0 * c * (pair.src.vectors - pair.src_ref.vectors)
        gt = 2.0 * c * (pair.tgt.vectors - pair.tgt_ref.vectors)
        ls = list(pair.src_word_ends)
        lt = list(pair.tgt_word_ends)
        diff = 2.0 * (pair.src.vectors[ls] - pair.tgt.vectors[lt])
        np.add.at(gs, ls, diff)
        np.add.at(gt, lt, -diff)
        grads.append(PairGradients(src=gs, tgt=gt))
    return grads


def _gather_word_ends(batch):
    """Stack all aligned word-end vectors across the batch.

    Returns (U, V, slots) where slots[k] = (pair index, src token index,
    tgt token index) for scattering gradients back.
    """
    rows_u, rows_v, slots = [], [], []
    for p_idx, pair in enumerate(batch):
        for s_idx, t_idx in zip(pair.src_word_ends, pair.tgt_word_ends):
            rows_u.append(pair.src.vectors[s_idx])
            rows_v.append(pair.tgt.vectors[t_idx])
            slots.append((p_idx, s_idx, t_idx))
    if not slots:
        raise AlignmentError("batch contains no aligned word pairs")
    return np.array(rows_u), np.array(rows_v), slots


def _cosine_matrix(u: np.ndarray, v: np.ndarray, temperature: float):
    nu = np.linalg.norm(u, axis=1)
    nv = np.linalg.norm(v, axis=1)
    if np.any(nu == 0.0) or np.any(nv == 0.0):
        raise AlignmentError("zero vector encountered in cosine similarity")
    cos = (u @ v.T) / np.outer(nu, nv)
    return cos, cos / temperature, nu, nv


def _softmax_rows(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=1, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=1, keepdims=True)


def contrastive_alignment_loss(
    batch, temperature: float = DEFAULT_TEMPERATURE, reg_coefficient: float = 1.0
) -> LossReport:
    """In-batch contrastive alignment loss with the same reg term as MSE.

    For each aligned word pair k the positive is its own target vector
    and the negatives are every other target word-end vector in the
    batch; similarities are cosines scaled by 1/temperature.
    """
    if temperature <= 0:
        raise AlignmentError("temperature must be positive")
    if not batch:
        raise AlignmentError("batch must be non-empty")
    for index, pair in enumerate(batch):
        _validate_pair(pair, index)
    u, v, _ = _gather_word_ends(batch)
    _, scores, _, _ = _cosine_matrix(u, v, temperature)
    n = scores.shape[0]
    shifted = scores - scores.max(axis=1, keepdims=True)
    logsumexp = np.log(np.exp(shifted).sum(axis=1)) + scores.max(axis=1)
    align = float(math.fsum(logsumexp - np.diagonal(scores)) / n)
    reg = math.fsum(_reg_term(pair) for pair in batch)
    return LossReport(
        align_loss=align,
        reg_loss=reg,
        total=align + reg_coefficient * reg,
        reg_coefficient=reg_coefficient,
    )


def contrastive_alignment_grad(
    batch, temperature: float = DEFAULT_TEMPERATURE, reg_coefficient: float = 1.0
) -> list[PairGradients]:
    """Analytic gradient of contrastive_alignment_loss's total."""
    if temperature <= 0:
        raise AlignmentError("temperature must be positive")
    if not batch:
        raise AlignmentError("batch must be non-empty")
    for index, pair in enumerate(batch):
        _validate_pair(pair, index)
    u, v, slots = _gather_word_ends(batch)
    cos, scores, nu, nv = _cosine_matrix(u, v, temperature)
    n = scores.shape[0]
    # d(align)/d(score[k,m]) = (softmax - identity) / n
    a = (_softmax_rows(scores) - np.eye(n)) / (n * temperature)
    un = u / nu[:, None]
    vn = v / nv[:, None]
    ac = a * cos
    du = (a @ vn - un * ac.sum(axis=1, keepdims=True)) / nu[:, None]
    dv = (a.T @ un - vn * ac.sum(axis=0)[:, None]) / nv[:, None]
    grads = [
        PairGradients(
            src=2.0 * reg_coefficient * (pair.src.vectors - pair.src_ref.vectors),
            tgt=2.0 * reg_coefficient * (pair.tgt.vectors - pair.tgt_ref.vectors),
        )
        for pair in batch
    ]
    for k, (p_idx, s_idx, t_idx) in enumerate(slots):
        grads[p_idx].src[s_idx] += du[k]
        grads[p_idx].tgt[t_idx] += dv[k]
    return grads


class _FlatBatch:
    """Batch stacked into two arrays so the FD loop evaluates the loss
    with a handful of vectorized operations per call."""

    def __init__(self, batch):
        parts, ref_parts, u_idx, v_idx = [], [], [], []
        offset = 0
        offsets = []
        for pair in batch:
            offsets.append(offset)
            parts.append(pair.src.vectors)
            ref_parts.append(pair.src_ref.vectors)
            offset += pair.src.vectors.shape[0]
            offsets.append(offset)
            parts.append(pair.tgt.vectors)
            ref_parts.append(pair.tgt_ref.vectors)
            offset += pair.tgt.vectors.shape[0]
        for p_idx, pair in enumerate(batch):
            src_off = offsets[2 * p_idx]
            tgt_off = offsets[2 * p_idx + 1]
            u_idx.extend(src_off + i for i in pair.src_word_ends)
            v_idx.extend(tgt_off + j for j in pair.tgt_word_ends)
        self.x = np.concatenate(parts).copy()
        self.x0 = np.concatenate(ref_parts)
        self.u_idx = np.array(u_idx, dtype=np.intp)
        self.v_idx = np.array(v_idx, dtype=np.intp)

    def total(self, reg_coefficient: float, loss: str, temperature: float) -> float:
        r = self.x - self.x0
        reg = float(np.sum(r * r))
        if loss == "mse":
            d = self.x[self.u_idx] - self.x[self.v_idx]
            align = float(np.sum(d * d))
        elif loss == "contrastive":
            u = self.x[self.u_idx]
            v = self.x[self.v_idx]
            _, scores, _, _ = _cosine_matrix(u, v, temperature)
            row_max = scores.max(axis=1)
            logsumexp = np.log(np.exp(scores - row_max[:, None]).sum(axis=1)) + row_max
            align = float(np.mean(logsumexp - np.diagonal(scores)))
        else:
            raise AlignmentError(f"unknown loss kind {loss!r}")
        return align + reg_coefficient * reg


def finite_difference_check(
    batch,
    reg_coefficient: float = 1.0,
    epsilon: float = 1e-4,
    loss: str = "mse",
    temperature: float = DEFAULT_TEMPERATURE,
) -> float:
    """Max relative error between analytic and central-difference gradients.

    Relative error per coordinate is |analytic - numeric| divided by
    max(1e-12, |analytic| + |numeric|).
    """
    if not 0.0 < epsilon <= 1e-2:
        raise AlignmentError("epsilon must lie in (0, 1e-2]")
    if loss not in ("mse", "contrastive"):
        raise AlignmentError(f"unknown loss kind {loss!r}")
    if loss == "mse":
        analytic = mse_alignment_grad(batch, reg_coefficient)
    else:
        analytic = contrastive_alignment_grad(batch, temperature, reg_coefficient)
    flat_batch = _FlatBatch(batch)
    grad_flat = np.concatenate(
        [np.concatenate([g.src, g.tgt]) for g in analytic]
    ).ravel()
    x = flat_batch.x.ravel()
    max_err = 0.0
    for i in range(x.size):
        orig = x[i]
        x[i] = orig + epsilon
        plus = flat_batch.total(reg_coefficient, loss, temperature)
        x[i] = orig - epsilon
        minus = flat_batch.total(reg_coefficient, loss, temperature)
        x[i] = orig
        numeric = (plus - minus) / (2.0 * epsilon)
        err = abs(grad_flat[i] - numeric) / max(1e-12, abs(grad_flat[i]) + abs(numeric))
        if err > max_err:
            max_err = err
    return max_err


def write_embeddings(sequences, path) -> None:
    """Blocks of `dim=<d> tokens=<n>` headers followed by n rows of d reals."""
    with io.open(path, "w", encoding="utf-8", newline="\n") as handle:
        for seq in sequences:
            n, d = seq.vectors.shape
            handle.write(f"dim={d} tokens={n}\n")
            for row in seq.vectors:
                handle.write(" ".join(f"{x:.17g}" for x in row) + "\n")


def read_embeddings(path) -> list[EmbeddingSequence]:
    sequences: list[EmbeddingSequence] = []
    with io.open(path, "r", encoding="utf-8") as handle:
        lines = [line.rstrip("\n") for line in handle if line.strip()]
    pos = 0
    while pos < len(lines):
        header = lines[pos]
        try:
            fields = dict(part.split("=") for part in header.split())
            dim, tokens = int(fields["dim"]), int(fields["tokens"])
        except (ValueError, KeyError):
            raise AlignmentError(f"malformed embedding header: {header!r}") from None
        rows = lines[pos + 1 : pos + 1 + tokens]
        if len(rows) < tokens:
            raise AlignmentError("embedding file truncated")
        arr = np.array([[float(x) for x in row.split()] for row in rows], dtype=np.float64)
        if arr.shape != (tokens, dim):
            raise AlignmentError(f"embedding block does not match header {header!r}")
        sequences.append(EmbeddingSequence(vectors=arr, dim=dim))
        pos += 1 + tokens
    return sequences


def write_ends(pairs_of_ends, path) -> None:
    """Per line: source indices, a tab, target indices (space-separated)."""
    with io.open(path, "w", encoding="utf-8", newline="\n") as handle:
        for src_ends, tgt_ends in pairs_of_ends:
            left = " ".join(str(i) for i in src_ends)
            right = " ".join(str(i) for i in tgt_ends)
            handle.write(f"{left}\t{right}\n")


def read_ends(path) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    out: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    with io.open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if "\t" not in line:
                raise AlignmentError(f"ends file line {lineno}: expected two tab-separated lists")
            left, _, right = line.partition("\t")
            out.append(
                (
                    tuple(int(x) for x in left.split()),
                    tuple(int(x) for x in right.split()),
                )
            )
    return out


def assemble_batch(src, tgt, src_ref, tgt_ref, ends) -> list[AlignedEmbeddingPair]:
    """Zip parallel sequence lists and word-end pairs into a batch."""
    counts = {len(src), len(tgt), len(src_ref), len(tgt_ref), len(ends)}
    if len(counts) != 1:
        raise AlignmentError("embedding files and ends file disagree on pair count")
    batch = []
    for i in range(len(src)):
        batch.append(
            AlignedEmbeddingPair(
                src=src[i],
                tgt=tgt[i],
                src_ref=src_ref[i],
                tgt_ref=tgt_ref[i],
                src_word_ends=ends[i][0],
                tgt_word_ends=ends[i][1],
            )
        )
    return batch
