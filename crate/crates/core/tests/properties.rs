use proptest::prelude::*;

use satake::catalog;
use satake::charalg::{
    expand_in_m_basis, from_m_coords, twisted_action, vt_embed, vt_grade, vt_multiply, vt_section,
    LatticeElement, MCoords, QMode, VTElement,
};
use satake::hecke::{scaling_compare, HeckeAlgebra, HeckeElement};
use satake::lattice::Weight;
use satake::poly::LaurentPoly;
use satake::rootdata::RootDatum;
use satake::weyl::to_antidominant;

fn datum(i: usize) -> RootDatum {
    let all = catalog::catalog();
    all[i % all.len()].clone()
}

fn small_coords(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, rank)
}

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0i32..3, -3i64..=3), 0..3).prop_map(LaurentPoly::from_terms)
}

/// A sigma-fixed antidominant weight built from fixed-lattice coordinates.
fn fixed_antidominant(d: &RootDatum, c: &[i64]) -> Weight {
    let mut w = Weight::zero(d.rank());
    for (ci, b) in c.iter().zip(d.fixed_sublattice()) {
        w = w.add_scaled(*ci, &Weight(b.clone()));
    }
    to_antidominant(d, &w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dominance_is_a_partial_order(i in 0usize..14, a in small_coords(4), b in small_coords(4), c in small_coords(4)) {
        let d = datum(i);
        let r = d.rank();
        let (a, b, c) = (Weight(a[..r].to_vec()), Weight(b[..r].to_vec()), Weight(c[..r].to_vec()));
        prop_assert!(d.dominance_leq(&a, &a));
        if d.dominance_leq(&a, &b) && d.dominance_leq(&b, &a) {
            prop_assert_eq!(&a, &b);
        }
        if d.dominance_leq(&a, &b) && d.dominance_leq(&b, &c) {
            prop_assert!(d.dominance_leq(&a, &c));
        }
    }

    #[test]
    fn shifts_are_integral_on_the_root_lattice(i in 0usize..14, c in small_coords(3)) {
        let d = datum(i);
        let beta = d.from_root_coordinates(&c[..d.semisimple_rank()]);
        prop_assert!(d.rho_ad().pair_integral(&beta).is_ok());
        let two_rho = Weight(d.two_rho());
        prop_assert_eq!(d.rho_ad().pair(&beta) * 2, num_rational::Ratio::from_integer(satake::lattice::dot(two_rho.coords(), beta.coords())));
        // sigma-invariance of rho_ad
        prop_assert_eq!(d.rho_ad().pair(&beta), d.rho_ad().pair(&d.apply_sigma(&beta)));
    }

    #[test]
    fn hecke_product_is_commutative_and_associative(
        i in 0usize..9, a in small_coords(2), b in small_coords(2), c in small_coords(2)
    ) {
        let names = ["GL2", "GL3", "PGL2", "PGL3", "SL2", "Sp4", "G2", "U3", "GL2xGL2"];
        let d = catalog::lookup(names[i]).unwrap();
        let k = d.fixed_sublattice().len();
        let pick = |v: &[i64]| fixed_antidominant(&d, &v[..k.min(2)].iter().map(|x| x.clamp(&-2, &2)).copied().collect::<Vec<_>>());
        let h = HeckeAlgebra::spherical(d.clone(), QMode::Symbolic);
        let (x, y, z) = (HeckeElement::basis(pick(&a)), HeckeElement::basis(pick(&b)), HeckeElement::basis(pick(&c)));
        let xy = h.multiply(&x, &y).unwrap();
        prop_assert_eq!(&xy, &h.multiply(&y, &x).unwrap());
        let left = h.multiply(&xy, &z).unwrap();
        let right = h.multiply(&x, &h.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn m_expansion_round_trip(i in 0usize..14, pts in prop::collection::vec((small_coords(4), small_poly()), 1..4)) {
        let d = datum(i);
        let k = d.fixed_sublattice().len();
        let rho = d.rho_ad();
        let mut coords = MCoords::new();
        for (c, p) in pts {
            if !p.is_zero() {
                coords.insert(fixed_antidominant(&d, &c[..k]), p);
            }
        }
        let x = from_m_coords(&d, &rho, QMode::Symbolic, &coords).unwrap();
        prop_assert_eq!(expand_in_m_basis(&d, &rho, &x).unwrap(), coords);
    }

    #[test]
    fn twisted_action_composes(i in 0usize..14, c in small_coords(4), w1 in 0usize..3, w2 in 0usize..3, p in small_poly()) {
        let d = datum(i);
        let gens = d.folded_words().len();
        prop_assume!(gens > 0 && !p.is_zero());
        let (g1, g2) = (w1 % gens, w2 % gens);
        let lam = {
            let k = d.fixed_sublattice().len();
            let mut w = Weight::zero(d.rank());
            for (ci, b) in c[..k].iter().zip(d.fixed_sublattice()) {
                w = w.add_scaled(*ci, &Weight(b.clone()));
            }
            w
        };
        let rho = d.rho_ad();
        let x = LatticeElement::monomial(lam, p, QMode::Symbolic);
        let both = twisted_action(&d, &rho, &[g1, g2], &x).unwrap();
        let stepwise = twisted_action(&d, &rho, &[g1], &twisted_action(&d, &rho, &[g2], &x).unwrap()).unwrap();
        prop_assert_eq!(&both, &stepwise);
        // each folded generator is an involution
        prop_assert_eq!(twisted_action(&d, &rho, &[g1, g1], &x).unwrap(), x);
    }

    #[test]
    fn vt_maps_are_ring_maps(l1 in small_coords(2), l2 in small_coords(2), e1 in 0i64..3, e2 in 0i64..3) {
        let d = catalog::lookup("GL2").unwrap();
        let rho = d.rho_ad();
        let alpha = Weight(vec![1, -1]);
        let make = |l: &[i64], e: i64| {
            let lam = Weight(l.to_vec());
            let nu = (&alpha.scale(e)) - &to_antidominant(&d, &lam);
            VTElement::monomial(&d, lam, nu, LaurentPoly::one()).unwrap()
        };
        let (a, b) = (make(&l1, e1), make(&l2, e2));
        let ab = vt_multiply(&d, &a, &b).unwrap();
        let embed = |x: &VTElement| vt_embed(&d, &rho, QMode::Symbolic, x).unwrap();
        prop_assert_eq!(embed(&ab), embed(&a).multiply(&embed(&b)).unwrap());
        prop_assert_eq!(vt_section(&ab), vt_section(&a).multiply(&vt_section(&b)));
        let s = vt_section(&ab);
        prop_assert_eq!(vt_section(&vt_grade(&d, &s).unwrap()), s);
    }

    #[test]
    fn scaling_identity_on_random_pairs(i in 0usize..3, a in small_coords(2), b in small_coords(2), s in 1i64..3) {
        let names = ["GL2", "PGL2", "GL3"];
        let d = catalog::lookup(names[i]).unwrap();
        let k = d.fixed_sublattice().len();
        let l = fixed_antidominant(&d, &a[..k.min(2)]);
        let m = fixed_antidominant(&d, &b[..k.min(2)]);
        let h = HeckeAlgebra::spherical(d.clone(), QMode::Symbolic);
        let mut lam = vec![0; d.rank()];
        lam[0] = s;
        let hv = h.weight_hecke(&lam).unwrap();
        prop_assert!(scaling_compare(&h, &hv, &l, &m).is_ok());
    }
}

#[test]
fn vt_embedding_separates_distinct_lambdas() {
    let d = catalog::lookup("GL3").unwrap();
    let rho = d.rho_ad();
    let mut seen = std::collections::BTreeMap::new();
    for lam in satake::lattice::vectors_up_to_height(3, 3) {
        let nu = (&Weight(vec![1, 0, -1])) - &to_antidominant(&d, &lam);
        let x = VTElement::monomial(&d, lam.clone(), nu, LaurentPoly::one()).unwrap();
        let img = vt_embed(&d, &rho, QMode::Symbolic, &x).unwrap();
        let (w, _) = img.terms().iter().next().unwrap();
        assert!(seen.insert(w.clone(), lam).is_none());
    }
}
