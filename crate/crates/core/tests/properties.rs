use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tnn_compact::cells::{classify, sample_cell, CellLabel};
use tnn_compact::group::{associated_borel, block_udl, position, FlagPoint};
use tnn_compact::io::{matrix_from_json, matrix_to_json};
use tnn_compact::laurent::{leading_term, lift, Laurent, LaurentMatrix};
use tnn_compact::rational::{frac, int};
use tnn_compact::strata::membership_zgt0;
use tnn_compact::tnn::{sample_g_gt0, sample_l_ge0};
use tnn_compact::verify::{forward_point, sample_tnn};
use tnn_compact::{CompactPoint, GroupMatrix, Parabolic, QMat, Rational, WeylElement};

fn matrix(n: usize) -> impl Strategy<Value = QMat> {
    prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
        QMat::from_rows(v.chunks(n).map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    })
}

fn stratum() -> impl Strategy<Value = Parabolic> {
    (2usize..=3).prop_flat_map(|n| (0u32..1 << (n - 1)).prop_map(move |m| Parabolic::new(n, (1..n).filter(|i| m >> (i - 1) & 1 == 1)).unwrap()))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cauchy_binet(a in matrix(4), b in matrix(4), k in 1usize..=4) {
        prop_assert_eq!((&a * &b).compound(k), &a.compound(k) * &b.compound(k));
    }

    #[test]
    fn determinant_is_the_top_compound(a in matrix(4)) {
        prop_assert_eq!(a.compound(4)[(0, 0)].clone(), a.det());
    }

    #[test]
    fn ldu_reassembles(seed in any::<u64>(), n in 2usize..=4) {
        let g = sample_g_gt0(n, &mut rng(seed));
        let (l, d, u) = g.ldu().unwrap();
        let rebuilt = l.mat() * &(&QMat::diagonal(&d) * u.mat());
        prop_assert_eq!(&rebuilt, g.mat());
        prop_assert!((0..n).all(|i| (0..i).all(|j| l.mat()[(j, i)].is_zero() && u.mat()[(i, j)].is_zero())));
    }

    #[test]
    fn psi_reverses_products(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let (g, h) = (sample_tnn(n, &mut r), sample_tnn(n, &mut r));
        prop_assert_eq!(g.mul(&h).psi(), h.psi().mul(&g.psi()));
        prop_assert_eq!(g.psi().psi(), g);
    }

    #[test]
    fn levi_projection_is_multiplicative(seed in any::<u64>(), j in stratum()) {
        // π_{U^+_J}: the block-diagonal part of the upper factor.
        let n = j.n();
        let mut r = rng(seed);
        let (a, b) = (sample_g_gt0(n, &mut r), sample_g_gt0(n, &mut r));
        let (ua, ub) = (a.pi_uplus().unwrap(), b.pi_uplus().unwrap());
        let lhs = ua.mul(&ub).pi_uplus_j(&j).unwrap();
        let rhs = ua.pi_uplus_j(&j).unwrap().mul(&ub.pi_uplus_j(&j).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_udl_reassembles(seed in any::<u64>(), j in stratum()) {
        let g = sample_g_gt0(j.n(), &mut rng(seed));
        let (up, l, lo) = block_udl(g.mat(), &j).unwrap();
        prop_assert_eq!(&(&up * &(&l * &lo)), g.mat());
    }

    #[test]
    fn associated_borel_lies_in_the_quotient(seed in any::<u64>(), j in stratum()) {
        let n = j.n();
        let a = sample_tnn(n, &mut rng(seed));
        let p = CompactPoint::base_point(&j).act(&a, &GroupMatrix::identity(n)).p();
        for b in [FlagPoint::standard(n), FlagPoint::opposite(n)] {
            let pb = associated_borel(&p, &b);
            let w = position(&b, &pb);
            prop_assert!(j.is_min_coset_rep(&w), "position {} not minimal", w);
        }
    }

    #[test]
    fn action_axiom(seed in any::<u64>(), j in stratum()) {
        let n = j.n();
        let mut r = rng(seed);
        let z = forward_point(&j, &mut r);
        let g: Vec<GroupMatrix> = (0..4).map(|_| sample_tnn(n, &mut r)).collect();
        prop_assert_eq!(z.act(&g[0], &g[1]).act(&g[2], &g[3]), z.act(&g[2].mul(&g[0]), &g[3].mul(&g[1])));
    }

    #[test]
    fn membership_ignores_levi_rescaling(seed in any::<u64>(), j in stratum()) {
        let n = j.n();
        let mut r = rng(seed);
        let z = forward_point(&j, &mut r);
        // Rescale each Levi block by a scalar, keeping determinant one.
        let blocks = j.blocks();
        let mut diag = vec![int(1); n];
        if blocks.len() >= 2 && blocks[0].len() == blocks[1].len() {
            for i in blocks[0].clone() { diag[i] = int(2); }
            for i in blocks[1].clone() { diag[i] = frac(1, 2); }
        }
        let c = GroupMatrix::diagonal(&diag).unwrap();
        let scaled = CompactPoint::new(j.clone(), z.a.clone(), z.b.clone(), z.l.mul(&c)).unwrap();
        prop_assert_eq!(&scaled, &z);
        prop_assert_eq!(membership_zgt0(&scaled).0, membership_zgt0(&z).0);
    }

    #[test]
    fn psibar_preserves_the_positive_part(seed in any::<u64>(), j in stratum()) {
        let z = forward_point(&j, &mut rng(seed));
        prop_assert!(membership_zgt0(&z.psibar()).0);
    }

    #[test]
    fn levi_samples_are_block_diagonal_and_tnn(seed in any::<u64>(), j in stratum()) {
        let l = sample_l_ge0(&j, &mut rng(seed));
        prop_assert!(l.is_totally_nonnegative());
        prop_assert!(CompactPoint::new(j.clone(), GroupMatrix::identity(j.n()), GroupMatrix::identity(j.n()), l).is_ok());
    }

    #[test]
    fn classification_is_stable_under_torus_rescaling(seed in any::<u64>(), j in stratum()) {
        // Positive diagonal matrices act on each cell.
        let n = j.n();
        let mut r = rng(seed);
        let labels = tnn_compact::cells::enumerate_cells(&j).unwrap();
        let label: CellLabel = labels[(seed as usize) % labels.len()].0.clone();
        let (_, z) = sample_cell(&label, seed).unwrap();
        let t = GroupMatrix::torus(n, &tnn_compact::rational::random_positive_vec(&mut r, n - 1)).unwrap();
        let s = GroupMatrix::torus(n, &tnn_compact::rational::random_positive_vec(&mut r, n - 1)).unwrap();
        prop_assert_eq!(classify(&z.act(&t, &s)).unwrap(), label);
    }

    #[test]
    fn bruhat_order_matches_lengths(a in 0usize..24, b in 0usize..24) {
        let all = WeylElement::all(4);
        let (v, w) = (&all[a], &all[b]);
        let le = v.bruhat_leq(w).unwrap();
        prop_assert_eq!(le, v.inverse().bruhat_leq(&w.inverse()).unwrap());
        if le {
            prop_assert!(v.length() <= w.length());
        }
    }

    #[test]
    fn matrices_survive_json(a in matrix(3), p in -50i64..50, q in 1i64..50) {
        let mut m = a.clone();
        m[(0, 0)] = Rational::new(p.into(), q.into());
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    }

    #[test]
    fn degenerate_curve_has_rank_one_limit(seed in any::<u64>(), e in 0i64..3) {
        let n = 3;
        let mut r = rng(seed);
        let (g, h) = (sample_g_gt0(n, &mut r), sample_g_gt0(n, &mut r));
        let mut t = LaurentMatrix::identity(n);
        t[(0, 0)] = Laurent::monomial(int(1), -e);
        let curve = lift(g.mat()).matmul(&t).matmul(&lift(h.mat()));
        let lead = leading_term(&curve).unwrap();
        prop_assert!(!lead.is_zero());
        if e > 0 {
            // Rank one: the product of the first column of g and the first row of h.
            prop_assert_eq!(lead.rank(), 1);
        }
    }
}
