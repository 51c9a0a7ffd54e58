//! Property tests over random curves, residues and divisors.

use std::sync::Arc;

use kummer_core::algebra::{Field, FieldElement, Matrix, ModFElement, ProjPoint, UniPoly};
use kummer_core::curvefile::CurveFile;
use kummer_core::kummer::{derive_kummer_quartic, kummer_coords};
use kummer_core::linecomplex::{g_bilinear, theta, v_table, kappa1};
use kummer_core::sampling::DivisorSampler;
use kummer_core::surface::{diagonal_quadrics, epsilon, kappa_constructive, s_membership, to_pi};
use kummer_core::twists::{twist_iso, twist_iso_inverse, twist_surface, TwistClass};
use kummer_core::Genus2Curve;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const P: u64 = 101;

fn gf() -> Field {
    Field::Prime(P)
}

/// Six distinct residues in shuffled order.
fn root_set() -> impl Strategy<Value = Vec<i64>> {
    prop::sample::subsequence((0..P as i64).collect::<Vec<_>>(), 6).prop_shuffle()
}

fn curve_from(roots: &[i64]) -> Genus2Curve {
    Genus2Curve::from_i64_roots(gf(), roots).unwrap()
}

fn residue_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0..P as i64, 6)
}

fn modf(c: &[i64], modulus: &Arc<UniPoly>) -> ModFElement {
    ModFElement::new(&UniPoly::from_i64(gf(), c), modulus).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn residue_ring_axioms(roots in root_set(), a in residue_poly(), b in residue_poly(), c in residue_poly()) {
        let f = curve_from(&roots).sextic().clone();
        let (a, b, c) = (modf(&a, &f), modf(&b, &f), modf(&c, &f));
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
        if let Ok(inv) = a.inv() {
            prop_assert_eq!(a.mul(&inv).unwrap().residue().clone(), UniPoly::one(gf()));
        }
    }

    #[test]
    fn idempotent_basis(roots in root_set()) {
        let c = curve_from(&roots);
        let f = c.sextic().clone();
        for i in 1..=6 {
            let pi = ModFElement::new(c.basis_poly(i).unwrap(), &f).unwrap();
            let sq = pi.mul(&pi).unwrap();
            let scaled = ModFElement::new(&c.basis_poly(i).unwrap().scale(c.omega(i).unwrap()), &f).unwrap();
            prop_assert_eq!(sq, scaled);
            for j in (i + 1)..=6 {
                let pj = ModFElement::new(c.basis_poly(j).unwrap(), &f).unwrap();
                prop_assert!(pi.mul(&pj).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn projective_equality_is_scale_invariant(v in prop::collection::vec(0..P as i64, 4), s in 1..P as i64, t in 1..P as i64) {
        prop_assume!(v.iter().any(|&x| x != 0));
        let p = ProjPoint::from_i64(gf(), &v).unwrap();
        let scale = |k: i64| ProjPoint::new(p.coords().iter().map(|x| x * &gf().from_i64(k)).collect()).unwrap();
        let (ps, pt) = (scale(s), scale(t));
        prop_assert!(p.proj_eq(&ps).unwrap());
        prop_assert!(ps.proj_eq(&pt).unwrap());
        prop_assert_eq!(&ps, &pt);
        prop_assert_eq!(ps.normalized(), p.normalized());
    }

    #[test]
    fn divisor_invariants(roots in root_set(), seed in any::<u64>()) {
        let c = curve_from(&roots);
        let quartic = derive_kummer_quartic(&c).unwrap();
        let sampler = DivisorSampler::new(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..4 {
            let d = sampler.sample(&mut rng);
            let xi = kummer_coords(&d, &c).unwrap();
            prop_assert!(quartic.contains(&xi));
            prop_assert_eq!(&kummer_coords(&d.swapped(), &c).unwrap(), &xi);
            prop_assert_eq!(&kummer_coords(&d.conjugate(), &c).unwrap(), &xi);
            let s = kappa_constructive(&d, &c).unwrap();
            prop_assert!(s_membership(&s, &c));
            let diag = diagonal_quadrics(&to_pi(&s, &c).unwrap(), &c).unwrap();
            prop_assert!(diag.iter().all(FieldElement::is_zero));
            for i in 1..=6 {
                let e = epsilon(i, &s, &c).unwrap();
                prop_assert!(s_membership(&e, &c));
                prop_assert_eq!(&epsilon(i, &e, &c).unwrap(), &s);
            }
        }
    }

    #[test]
    fn kummer_quartic_is_symmetric_in_the_roots(roots in root_set(), perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let c = curve_from(&roots);
        let permuted: Vec<i64> = perm.iter().map(|&k| roots[k]).collect();
        prop_assert_eq!(derive_kummer_quartic(&c).unwrap(), derive_kummer_quartic(&curve_from(&permuted)).unwrap());
    }

    #[test]
    fn classical_lines_bridge(roots in root_set(), seed in any::<u64>()) {
        let c = curve_from(&roots);
        let table = v_table(&c).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                let g = g_bilinear(&table[i], &table[j]);
                prop_assert_eq!(g.is_zero(), i != j);
            }
        }
        let sampler = DivisorSampler::new(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = sampler.sample(&mut rng);
        let xi = kummer_coords(&d, &c).unwrap();
        // points on a trope have a singular tangent plane section
        if let Ok(line) = kappa1(&xi, &c) {
            prop_assert_eq!(theta(line.point(), &c).unwrap(), kappa_constructive(&d, &c).unwrap());
        }
    }

    #[test]
    fn twists_by_squares_return_to_s(roots in root_set(), beta in residue_poly(), seed in any::<u64>()) {
        let c = curve_from(&roots);
        let beta = UniPoly::from_i64(gf(), &beta);
        // beta must be a unit mod F
        prop_assume!(c.roots().unwrap().iter().all(|r| !beta.eval(r).is_zero()));
        let class = TwistClass::from_witness(&beta, &c).unwrap();
        let twisted = twist_surface(&class).unwrap();
        let sampler = DivisorSampler::new(&c).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = kappa_constructive(&sampler.sample(&mut rng), &c).unwrap();
        let q = twist_iso_inverse(&beta, &s, &class).unwrap();
        prop_assert!(twisted.contains(&q));
        prop_assert_eq!(twist_iso(&beta, &q, &class).unwrap(), s);
    }

    #[test]
    fn curve_files_round_trip(nums in prop::collection::btree_set(-50i64..50, 6), dens in prop::collection::vec(1i64..9, 6), lead in 1i64..5) {
        let field = Field::Rationals;
        let roots: Vec<FieldElement> = nums.iter().zip(&dens).map(|(&n, &d)| field.from_ratio(&n.into(), &d.into()).unwrap()).collect();
        let mut distinct = roots.clone();
        distinct.sort_by_key(|r| r.to_string());
        distinct.dedup();
        prop_assume!(distinct.len() == 6);
        let c = Genus2Curve::from_roots(field, roots, field.from_i64(-lead)).unwrap();
        let file = CurveFile::from_curve(&c);
        let parsed = CurveFile::parse(&file.to_string()).unwrap();
        prop_assert_eq!(&parsed, &file);
        let back = parsed.build().unwrap();
        prop_assert_eq!(back.coeffs(), c.coeffs());
        let by_coeffs = format!("field: QQ\ncoeffs: {}\n", c.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
        prop_assert_eq!(CurveFile::parse(&by_coeffs).unwrap().build().unwrap().coeffs(), c.coeffs());
    }

    #[test]
    fn matrix_inverse_and_kernel(entries in prop::collection::vec(0..P as i64, 16)) {
        let rows: Vec<Vec<FieldElement>> = entries.chunks(4).map(|r| r.iter().map(|&x| gf().from_i64(x)).collect()).collect();
        let m = Matrix::from_rows(gf(), rows).unwrap();
        let kernel = m.kernel();
        prop_assert_eq!(kernel.len() + m.rank(), 4);
        for v in &kernel {
            prop_assert!(m.apply(v).unwrap().iter().all(FieldElement::is_zero));
        }
        match m.inverse() {
            Ok(inv) => prop_assert_eq!(&m * &inv, Matrix::identity(gf(), 4)),
            Err(_) => prop_assert!(m.rank() < 4),
        }
    }
}
