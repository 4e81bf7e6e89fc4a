use curvesyz::conjectures::branch;
use curvesyz::jacobian::analyze;
use curvesyz::linalg::{kernel_basis, rank, rank_mod_p, Matrix, Scalar};
use curvesyz::local::local_mu_tau;
use curvesyz::parse::parse_homogeneous;
use curvesyz::poly::{divide_exact, dim_s, is_reduced, monomial_basis, partials, same_curve, HomogeneousPoly, LinearForm, Poly, ProjPoint};
use curvesyz::syzygy::{hilbert_polynomial, verify_generators, Classification};
use proptest::prelude::*;

fn q(n: i64) -> Scalar {
    Scalar::from_integer(n.into())
}

fn form(d: u32, coeffs: &[i64]) -> HomogeneousPoly {
    let p = Poly::from_terms(monomial_basis(d).into_iter().zip(coeffs).map(|(e, &c)| (e, q(c))));
    HomogeneousPoly::with_degree(p, d).unwrap()
}

fn nonzero_form(d: u32) -> impl Strategy<Value = HomogeneousPoly> {
    let n = ((d + 1) * (d + 2) / 2) as usize;
    prop::collection::vec(-4i64..=4, n)
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
        .prop_map(move |v| form(d, &v))
}

fn line() -> impl Strategy<Value = LinearForm> {
    (-3i64..=3, -3i64..=3, -3i64..=3)
        .prop_filter("nonzero", |&(a, b, c)| (a, b, c) != (0, 0, 0))
        .prop_map(|(a, b, c)| LinearForm::from_ints(a, b, c).unwrap())
}

fn unimodular() -> impl Strategy<Value = [i64; 4]> {
    prop::array::uniform4(-3i64..=3).prop_filter("det 1", |m| (m[0] * m[3] - m[1] * m[2]).abs() == 1)
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..7, seed in prop::collection::vec(-3i64..=3, 42)) {
        let entries: Vec<Vec<i64>> = (0..rows).map(|r| seed[r * cols..(r + 1) * cols].to_vec()).collect();
        let m = Matrix::from_i64_rows(&entries);
        let ker = kernel_basis(&m);
        prop_assert_eq!(rank(&m) + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
        }
        prop_assert!(rank_mod_p(&m, 101).unwrap() <= rank(&m));
    }

    #[test]
    fn euler_identity(f in (1u32..6).prop_flat_map(nonzero_form)) {
        let p = partials(&f);
        let mut acc = Poly::zero();
        for (i, pi) in p.iter().enumerate() {
            acc = &acc + &(&Poly::var(i) * pi.poly());
        }
        prop_assert_eq!(acc, f.poly().scale(&q(f.degree() as i64)));
    }

    #[test]
    fn parse_display_round_trip(f in (1u32..6).prop_flat_map(nonzero_form)) {
        let g = parse_homogeneous(&f.to_string()).unwrap();
        prop_assert_eq!(g, f);
    }

    #[test]
    fn division_round_trip(f in (1u32..5).prop_flat_map(nonzero_form), ell in line()) {
        let g = f.mul(&ell.to_poly());
        prop_assert_eq!(divide_exact(&g, &ell).unwrap(), f);
    }

    #[test]
    fn scaling_keeps_the_curve(f in (1u32..5).prop_flat_map(nonzero_form), c in 1i64..7, neg in any::<bool>()) {
        let c = if neg { -c } else { c };
        let g = HomogeneousPoly::with_degree(f.poly().scale(&q(c)), f.degree()).unwrap();
        prop_assert!(same_curve(&f, &g));
    }

    #[test]
    fn quasi_homogeneous_branch(p in 1u32..4, dq in 1u32..4, m in unimodular()) {
        let qq = p + dq;
        prop_assume!(num_integer::gcd(p, qq) == 1);
        let f = branch(p, qq, m);
        let l = local_mu_tau(&f, &ProjPoint::from_ints(0, 0, 1).unwrap()).unwrap();
        let want = ((p - 1) * (qq - 1)) as u64;
        prop_assert_eq!((l.mu, l.tau), (want, want));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn line_arrangements(lines in prop::collection::vec(line(), 3..6)) {
        let mut f = lines[0].to_poly();
        for l in &lines[1..] {
            f = f.mul(&l.to_poly());
        }
        prop_assume!(is_reduced(&f));
        let (p, t) = analyze(&f, None, None).unwrap();
        prop_assert!(verify_generators(&f, &p));
        for g in &p.generators {
            prop_assert!(g.apply(&f).is_zero());
        }
        let d = f.degree();
        let k = t.t as i64 + 1;
        if let Some(v) = p.d0_dim(k) {
            prop_assert_eq!(v as i64, hilbert_polynomial(d, t.tau_total, k));
        }
        // syzygies of degree k are the kernel of S_k^3 -> S_{k+d-1}
        for k in 0..=(t.k_max as i64 + 1 - d as i64) {
            let Some(v) = p.d0_dim(k) else { break };
            let m = t.m(k + d as i64 - 1).unwrap() as i64;
            prop_assert_eq!(v as i64, 3 * dim_s(k) - dim_s(k + d as i64 - 1) + m);
        }
        if let Classification::Free { d1, d2 } = p.classification {
            prop_assert_eq!(d1 + d2, d - 1);
            for k in 0..2 * d as i64 {
                let want = dim_s(k - d1 as i64) + dim_s(k - d2 as i64);
                prop_assert_eq!(p.d0_dim(k), Some(want as u64));
            }
            prop_assert_eq!(t.nu, 0);
        }
    }
}
