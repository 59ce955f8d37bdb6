import math

import numpy as np
import pytest

from pivotprep.align import (
    AlignedEmbeddingPair,
    AlignmentError,
    EmbeddingSequence,
    assemble_batch,
    contrastive_alignment_grad,
    contrastive_alignment_loss,
    finite_difference_check,
    mse_alignment_grad,
    mse_alignment_loss,
    read_embeddings,
    read_ends,
    write_embeddings,
    write_ends,
)


def seq(rows):
    return EmbeddingSequence.from_rows(rows)


def pair(src, tgt, src_ref=None, tgt_ref=None, src_ends=None, tgt_ends=None):
    src = seq(src)
    tgt = seq(tgt)
    return AlignedEmbeddingPair(
        src=src,
        tgt=tgt,
        src_ref=seq(src_ref) if src_ref is not None else seq(src.vectors.copy()),
        tgt_ref=seq(tgt_ref) if tgt_ref is not None else seq(tgt.vectors.copy()),
        src_word_ends=tuple(src_ends if src_ends is not None else range(src.vectors.shape[0])),
        tgt_word_ends=tuple(tgt_ends if tgt_ends is not None else range(tgt.vectors.shape[0])),
    )


def random_pair(rng, dim=8):
    n_src = rng.integers(6, 11)
    n_tgt = rng.integers(6, 11)
    n_words = int(min(n_src, n_tgt) // 2) + 1
    src_ends = np.sort(rng.choice(n_src, size=n_words, replace=False))
    tgt_ends = np.sort(rng.choice(n_tgt, size=n_words, replace=False))
    return AlignedEmbeddingPair(
        src=seq(rng.normal(size=(n_src, dim))),
        tgt=seq(rng.normal(size=(n_tgt, dim))),
        src_ref=seq(rng.normal(size=(n_src, dim))),
        tgt_ref=seq(rng.normal(size=(n_tgt, dim))),
        src_word_ends=tuple(int(i) for i in src_ends),
        tgt_word_ends=tuple(int(i) for i in tgt_ends),
    )


def random_batch(rng, n_pairs=3, dim=8):
    return [random_pair(rng, dim) for _ in range(n_pairs)]


HAND_PAIR = pair(
    src=[[1.0, 0.0], [0.0, 1.0]],
    tgt=[[0.0, 0.0], [0.0, 1.0]],
    src_ends=[0, 1],
    tgt_ends=[0, 1],
)


class TestMseLoss:
    def test_hand_derived_example(self):
        report = mse_alignment_loss([HAND_PAIR], reg_coefficient=1.0)
        assert abs(report.align_loss - 1.0) < 1e-12
        assert report.reg_loss == 0.0
        assert abs(report.total - 1.0) < 1e-12

    def test_perfect_alignment_is_zero(self):
        p = pair(src=[[1.0, 2.0]], tgt=[[1.0, 2.0]])
        report = mse_alignment_loss([p])
        assert report.align_loss == 0.0
        assert report.reg_loss == 0.0
        assert report.total == 0.0

    def test_reference_shift_gives_d_delta_squared(self):
        d, delta = 5, 0.3
        vec = np.ones((1, d))
        p = pair(src=vec, tgt=vec, src_ref=vec + delta, tgt_ref=vec)
        report = mse_alignment_loss([p])
        assert abs(report.reg_loss - d * delta**2) < 1e-12

    def test_reg_coefficient_scales_total(self):
        vec = np.ones((1, 3))
        p = pair(src=vec, tgt=vec, src_ref=vec + 1.0, tgt_ref=vec)
        report = mse_alignment_loss([p], reg_coefficient=2.5)
        assert report.total == report.align_loss + 2.5 * report.reg_loss

    def test_additivity_over_batches(self):
        rng = np.random.default_rng(0)
        batch = random_batch(rng, n_pairs=4)
        whole = mse_alignment_loss(batch, 1.3)
        parts = [mse_alignment_loss([p], 1.3) for p in batch]
        assert abs(whole.total - math.fsum(r.total for r in parts)) < 1e-12

    def test_swap_symmetry(self):
        rng = np.random.default_rng(1)
        batch = random_batch(rng)
        swapped = [
            AlignedEmbeddingPair(
                src=p.tgt,
                tgt=p.src,
                src_ref=p.tgt_ref,
                tgt_ref=p.src_ref,
                src_word_ends=p.tgt_word_ends,
                tgt_word_ends=p.src_word_ends,
            )
            for p in batch
        ]
        assert mse_alignment_loss(batch).align_loss == pytest.approx(
            mse_alignment_loss(swapped).align_loss, abs=1e-12
        )

    def test_translation_leaves_align_term_unchanged(self):
        rng = np.random.default_rng(2)
        batch = random_batch(rng)
        const = rng.normal(size=8)
        shifted = [
            AlignedEmbeddingPair(
                src=seq(p.src.vectors + const),
                tgt=seq(p.tgt.vectors + const),
                src_ref=p.src_ref,
                tgt_ref=p.tgt_ref,
                src_word_ends=p.src_word_ends,
                tgt_word_ends=p.tgt_word_ends,
            )
            for p in batch
        ]
        base = mse_alignment_loss(batch)
        moved = mse_alignment_loss(shifted)
        assert moved.align_loss == pytest.approx(base.align_loss, rel=1e-9)
        # Reg grows by (token count) * ||const||^2 plus a cross term tied
        # to the pre-existing deviations; with refs equal to the original
        # vectors the cross term vanishes.
        clean = [
            AlignedEmbeddingPair(
                src=p.src,
                tgt=p.tgt,
                src_ref=seq(p.src.vectors.copy()),
                tgt_ref=seq(p.tgt.vectors.copy()),
                src_word_ends=p.src_word_ends,
                tgt_word_ends=p.tgt_word_ends,
            )
            for p in batch
        ]
        shifted_clean = [
            AlignedEmbeddingPair(
                src=seq(p.src.vectors + const),
                tgt=seq(p.tgt.vectors + const),
                src_ref=p.src_ref,
                tgt_ref=p.tgt_ref,
                src_word_ends=p.src_word_ends,
                tgt_word_ends=p.tgt_word_ends,
            )
            for p in clean
        ]
        tokens = sum(p.src.vectors.shape[0] + p.tgt.vectors.shape[0] for p in batch)
        grown = mse_alignment_loss(shifted_clean).reg_loss
        assert grown == pytest.approx(tokens * float(const @ const), rel=1e-9)

    def test_nonnegativity_fuzz(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            report = mse_alignment_loss(random_batch(rng, n_pairs=2, dim=4), 0.7)
            assert report.align_loss >= 0.0
            assert report.reg_loss >= 0.0

    def test_shape_mismatch_names_pair(self):
        good = pair(src=[[1.0, 0.0]], tgt=[[1.0, 0.0]])
        bad = AlignedEmbeddingPair(
            src=seq([[1.0, 0.0]]),
            tgt=seq([[1.0, 0.0]]),
            src_ref=seq([[1.0, 0.0], [0.0, 0.0]]),
            tgt_ref=seq([[1.0, 0.0]]),
            src_word_ends=(0,),
            tgt_word_ends=(0,),
        )
        with pytest.raises(AlignmentError, match="pair 1"):
            mse_alignment_loss([good, bad])

    def test_empty_batch(self):
        with pytest.raises(AlignmentError):
            mse_alignment_loss([])


class TestMseGrad:
    def test_zero_loss_zero_gradient(self):
        p = pair(src=[[1.0, 2.0]], tgt=[[1.0, 2.0]])
        grads = mse_alignment_grad([p])
        assert np.all(grads[0].src == 0.0)
        assert np.all(grads[0].tgt == 0.0)

    def test_hand_derived_gradient(self):
        grads = mse_alignment_grad([HAND_PAIR], reg_coefficient=1.0)
        np.testing.assert_allclose(grads[0].src, [[2.0, 0.0], [0.0, 0.0]], atol=1e-14)
        np.testing.assert_allclose(grads[0].tgt, [[-2.0, 0.0], [0.0, 0.0]], atol=1e-14)

    def test_non_word_end_tokens_get_only_reg(self):
        src = np.array([[1.0, 0.0], [5.0, 5.0]])
        p = AlignedEmbeddingPair(
            src=seq(src),
            tgt=seq([[0.0, 0.0]]),
            src_ref=seq(src - 0.5),
            tgt_ref=seq([[0.0, 0.0]]),
            src_word_ends=(0,),
            tgt_word_ends=(0,),
        )
        grads = mse_alignment_grad([p], reg_coefficient=2.0)
        np.testing.assert_allclose(grads[0].src[1], [2.0, 2.0])  # 2 * c * 0.5

    def test_matches_finite_differences(self):
        rng = np.random.default_rng(4)
        err = finite_difference_check(random_batch(rng), reg_coefficient=1.0, epsilon=1e-4)
        assert err <= 1e-5

    def test_swap_negates_align_blocks(self):
        rng = np.random.default_rng(5)
        batch = random_batch(rng, n_pairs=1)
        p = batch[0]
        grads = mse_alignment_grad(batch, reg_coefficient=0.0)
        swapped = AlignedEmbeddingPair(
            src=p.tgt,
            tgt=p.src,
            src_ref=p.tgt_ref,
            tgt_ref=p.src_ref,
            src_word_ends=p.tgt_word_ends,
            tgt_word_ends=p.src_word_ends,
        )
        swapped_grads = mse_alignment_grad([swapped], reg_coefficient=0.0)
        np.testing.assert_allclose(grads[0].src, swapped_grads[0].tgt, atol=1e-12)
        np.testing.assert_allclose(grads[0].tgt, swapped_grads[0].src, atol=1e-12)


class TestContrastive:
    def test_singleton_align_term_is_zero(self):
        p = pair(src=[[1.0, 0.0]], tgt=[[0.5, 0.5]])
        report = contrastive_alignment_loss([p], temperature=1.0)
        assert abs(report.align_loss) < 1e-12

    def test_two_orthogonal_pairs(self):
        p = pair(
            src=[[1.0, 0.0], [0.0, 1.0]],
            tgt=[[1.0, 0.0], [0.0, 1.0]],
            src_ends=[0, 1],
            tgt_ends=[0, 1],
        )
        report = contrastive_alignment_loss([p], temperature=1.0)
        expected = -math.log(math.e / (math.e + 1.0))
        assert abs(report.align_loss - expected) < 1e-12
        assert abs(report.align_loss - 0.3133) < 5e-5

    def test_duplicated_pair_gives_log_two(self):
        single = pair(src=[[0.6, 0.8]], tgt=[[0.6, 0.8]])
        doubled = [single, single]
        report = contrastive_alignment_loss(doubled, temperature=1.0)
        assert abs(report.align_loss - math.log(2.0)) < 1e-12

    def test_zero_vector_is_error(self):
        p = pair(src=[[0.0, 0.0]], tgt=[[1.0, 0.0]])
        with pytest.raises(AlignmentError, match="zero vector"):
            contrastive_alignment_loss([p], temperature=1.0)

    def test_bad_temperature(self):
        with pytest.raises(AlignmentError):
            contrastive_alignment_loss([HAND_PAIR], temperature=0.0)

    def test_reg_term_matches_mse_reg(self):
        rng = np.random.default_rng(6)
        batch = random_batch(rng)
        assert contrastive_alignment_loss(batch).reg_loss == pytest.approx(
            mse_alignment_loss(batch).reg_loss, abs=1e-12
        )

    def test_grad_matches_finite_differences(self):
        rng = np.random.default_rng(7)
        err = finite_difference_check(
            random_batch(rng), reg_coefficient=1.0, epsilon=1e-4, loss="contrastive"
        )
        assert err <= 1e-5

    def test_grad_matches_finite_differences_small_temperature(self):
        rng = np.random.default_rng(8)
        err = finite_difference_check(
            random_batch(rng, n_pairs=2, dim=4),
            reg_coefficient=0.5,
            epsilon=1e-4,
            loss="contrastive",
            temperature=0.1,
        )
        assert err <= 1e-5


class TestFiniteDifferenceCheck:
    def test_zero_loss_batch(self):
        # Stationary point at the origin: +eps and -eps perturbations are
        # exactly symmetric there, so numeric and analytic agree to zero.
        p = pair(src=[[0.0, 0.0], [0.0, 0.0]], tgt=[[0.0, 0.0], [0.0, 0.0]])
        assert finite_difference_check([p], epsilon=1e-4) <= 1e-9

    def test_epsilon_zero_rejected(self):
        with pytest.raises(AlignmentError):
            finite_difference_check([HAND_PAIR], epsilon=0.0)

    def test_epsilon_too_large_rejected(self):
        with pytest.raises(AlignmentError):
            finite_difference_check([HAND_PAIR], epsilon=0.5)

    def test_does_not_mutate_batch(self):
        rng = np.random.default_rng(9)
        batch = random_batch(rng, n_pairs=1, dim=3)
        before = batch[0].src.vectors.copy()
        finite_difference_check(batch, epsilon=1e-3)
        np.testing.assert_array_equal(batch[0].src.vectors, before)


class TestFileFormats:
    def test_embeddings_round_trip(self, tmp_path):
        rng = np.random.default_rng(10)
        sequences = [seq(rng.normal(size=(4, 3))), seq(rng.normal(size=(2, 3)))]
        path = tmp_path / "emb.txt"
        write_embeddings(sequences, path)
        loaded = read_embeddings(path)
        assert len(loaded) == 2
        for orig, back in zip(sequences, loaded):
            np.testing.assert_array_equal(orig.vectors, back.vectors)

    def test_header_layout(self, tmp_path):
        path = tmp_path / "emb.txt"
        write_embeddings([seq([[1.5, -2.0]])], path)
        first = path.read_text().splitlines()[0]
        assert first == "dim=2 tokens=1"

    def test_ends_round_trip(self, tmp_path):
        ends = [((0, 2, 5), (1, 3, 4)), ((0,), (2,))]
        path = tmp_path / "pairs.ends"
        write_ends(ends, path)
        assert read_ends(path) == ends

    def test_assemble_batch_count_mismatch(self, tmp_path):
        s = [seq([[1.0]])]
        with pytest.raises(AlignmentError, match="pair count"):
            assemble_batch(s, s, s, s, [((0,), (0,)), ((0,), (0,))])
