//! Randomized invariants of the actions, the pairing, semigroup duals and
//! power sums of points.

use std::sync::OnceLock;

use macdual::duality::{
    artinian_dual, hilbert_function, module_membership, span_rank, ArtinianDual,
    DualPresentation, GradedIdeal,
};
use macdual::gadmissible::{g_sequence, GSequence};
use macdual::linalg::ExactMatrix;
use macdual::points::{power_sum_component, vanishing_ideal, ProjectivePoint};
use macdual::poly::{
    action_rescale, apply, monomials_of_weight, parse_poly, Action, Exponent, Flavor, Rescale,
    SparsePoly, Weighting,
};
use macdual::semigroup::NumericalSemigroup;
use macdual::Q;
use num_integer::Integer;
use proptest::prelude::*;

const CASES: u32 = 256;

fn poly(flavor: Flavor, n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), -9i64..=9, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        SparsePoly::from_terms(
            flavor,
            n,
            terms
                .into_iter()
                .map(|(e, a, b)| (Exponent::new(e), Q::new(a.into(), b.into()))),
        )
        .unwrap()
    })
}

/// A ring element, a second ring element and a dual element in `n ≤ 4`
/// variables, all of degree at most 8.
fn triple() -> impl Strategy<Value = (SparsePoly, SparsePoly, SparsePoly)> {
    (1usize..=4).prop_flat_map(|n| {
        let e = (8 / n as u32).max(1);
        (
            poly(Flavor::Ring, n, e.min(2), 3),
            poly(Flavor::Ring, n, e.min(2), 3),
            poly(Flavor::Dual, n, e, 5),
        )
    })
}

fn action() -> impl Strategy<Value = Action> {
    prop_oneof![Just(Action::Contraction), Just(Action::Derivation)]
}

fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
    (2u64..=12, prop::collection::vec(3u64..=40, 1..=3))
        .prop_filter_map("generators must be coprime", |(a1, rest)| {
            let mut gens = vec![a1];
            gens.extend(rest.into_iter().map(|a| a1 + a % 29));
            let g = gens.iter().fold(0u64, |acc, &x| acc.gcd(&x));
            (g == 1).then(|| NumericalSemigroup::new(&gens).unwrap())
        })
}

fn rational_points() -> impl Strategy<Value = Vec<ProjectivePoint>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=6).prop_filter_map(
        "points must be nonzero and distinct",
        |raw| {
            let mut pts: Vec<ProjectivePoint> = Vec::new();
            for c in raw {
                let p = ProjectivePoint::from_i64(&c).ok()?;
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            Some(pts)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn composition_law((f, g, big_f) in triple(), act in action()) {
        let lhs = apply(&f, &apply(&g, &big_f, act).unwrap(), act).unwrap();
        let rhs = apply(&f.ring_mul(&g).unwrap(), &big_f, act).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rescaling_intertwines_the_actions((f, _g, big_f) in triple()) {
        let via_derivation = action_rescale(&apply(&f, &big_f, Action::Derivation).unwrap(), Rescale::ToDerivation);
        let via_contraction = apply(&f, &action_rescale(&big_f, Rescale::ToDerivation), Action::Contraction).unwrap();
        prop_assert_eq!(&via_derivation, &via_contraction);
        let back = action_rescale(&action_rescale(&big_f, Rescale::ToDerivation), Rescale::ToContraction);
        prop_assert_eq!(back, big_f);
    }

    #[test]
    fn pairing_has_full_rank(weights in prop::collection::vec(1u64..=4, 1..=4), j in 0u64..=8, act in action()) {
        let w = Weighting::new(weights).unwrap();
        let mons = monomials_of_weight(&w, j);
        let mut m = ExactMatrix::zeros(mons.len(), mons.len());
        for (r, a) in mons.iter().enumerate() {
            for (c, b) in mons.iter().enumerate() {
                if let Some((k, e)) = act.apply_monomial(a, b) {
                    prop_assert!(e.entries().iter().all(|&x| x == 0));
                    m.set(r, c, Q::from_integer(k));
                }
            }
        }
        prop_assert_eq!(m.rank(), mons.len());
    }

    #[test]
    fn variables_shift_l_forms(sg in semigroup(), pick in 0usize..4, j_off in 0u64..60) {
        let i = pick % sg.embedding_dimension();
        let a = sg.generators()[i];
        let j = j_off % (sg.frobenius().max(0) as u64 + 2 * sg.multiplicity() + 1);
        let x = SparsePoly::variable(Flavor::Ring, sg.embedding_dimension(), i);
        let image = apply(&x, &sg.l_form(j), Action::Contraction).unwrap();
        let expected = match j.checked_sub(a) {
            Some(k) => sg.l_form(k),
            None => SparsePoly::zero(Flavor::Dual, sg.embedding_dimension()),
        };
        prop_assert_eq!(image, expected);
    }

    #[test]
    fn power_sums_match_hilbert_function(pts in rational_points(), j in 0u32..=6) {
        let ideal = vanishing_ideal(&pts, 3).unwrap();
        let dim = span_rank(&power_sum_component(&pts, j).unwrap());
        prop_assert_eq!(dim, hilbert_function(&ideal, j as u64));
    }
}

struct Truncations {
    seq: GSequence,
    duals: Vec<ArtinianDual>,
}

fn curve_truncations() -> &'static Truncations {
    static DATA: OnceLock<Truncations> = OnceLock::new();
    DATA.get_or_init(|| {
        let ring = |s: &str| parse_poly(s, Some(Flavor::Ring), Some(3)).unwrap();
        let ideal = GradedIdeal::new(
            vec![ring("x1^3-x2*x3"), ring("x2^3-x3^2")],
            Weighting::new(vec![5, 6, 9]).unwrap(),
        )
        .unwrap();
        let seq = g_sequence(&ideal, &ring("x1"), 4, Action::Contraction).unwrap();
        let duals = (1..=4)
            .map(|w| {
                let truncated = ideal.with_generator(ring("x1").ring_pow(w).unwrap()).unwrap();
                artinian_dual(&truncated, Action::Contraction).unwrap()
            })
            .collect();
        Truncations { seq, duals }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn truncated_duals_come_from_one_generator(
        w in 1usize..=4,
        pick in 0usize..64,
        coeffs in prop::collection::vec(-5i64..=5, 8),
    ) {
        let data = curve_truncations();
        let pieces = data.duals[w - 1].pieces();
        let (_, basis) = &pieces[pick % pieces.len()];
        let h = basis
            .iter()
            .zip(&coeffs)
            .fold(SparsePoly::zero(Flavor::Dual, 3), |acc, (b, &c)| {
                &acc + &b.scale(&Q::from_integer(c.into()))
            });
        let top = DualPresentation::cyclic(
            data.seq.h(w).unwrap().clone(),
            Action::Contraction,
            data.seq.ideal().weighting().clone(),
        )
        .unwrap();
        let witness = module_membership(&h, &top).unwrap();
        prop_assert!(witness.is_some());
        prop_assert_eq!(witness.unwrap().reapply(&top).unwrap(), h);
    }
}
