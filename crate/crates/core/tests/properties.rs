use proptest::prelude::*;
use wilddepth_core::{
    as_reduce, phi_from_ramification, ramification_breaks, uniformizer, wp, ASExtension, FieldSpec, FqElem, LElement,
    LaurentSeries, Rational, Valuation,
};

fn specs() -> Vec<FieldSpec> {
    vec![
        FieldSpec::prime(2).unwrap(),
        FieldSpec::prime(3).unwrap(),
        FieldSpec::prime(5).unwrap(),
        FieldSpec::new(2, &[1, 1, 1]).unwrap(),
        FieldSpec::new(3, &[1, 0, 1]).unwrap(),
    ]
}

fn series_in(spec: FieldSpec, lo: i64, hi: i64, max_terms: usize) -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec((lo..hi, 0..spec.q()), 0..max_terms).prop_map(move |terms| {
        LaurentSeries::from_terms(spec, terms.into_iter().map(|(e, c)| (e, FqElem::from_index(spec, c))))
    })
}

fn spec_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(specs())
}

fn pair() -> impl Strategy<Value = (LaurentSeries, LaurentSeries)> {
    spec_strategy().prop_flat_map(|s| (series_in(s, -15, 15, 8), series_in(s, -15, 15, 8)))
}

/// A wild extension together with two exact elements of `L`.
fn ext_and_elements() -> impl Strategy<Value = (ASExtension, LElement, LElement)> {
    let exts = prop::sample::select(vec![(2u32, 1u32), (2, 3), (2, 5), (3, 1), (3, 2), (3, 4), (5, 2), (5, 3)]);
    exts.prop_flat_map(|(p, m)| {
        let spec = FieldSpec::prime(p).unwrap();
        let ext = ASExtension::from_pole_order(spec, m).unwrap();
        let coeffs = || prop::collection::vec(series_in(spec, -6, 6, 4), p as usize);
        (Just(ext), coeffs(), coeffs())
    })
    .prop_map(|(ext, a, b)| {
        let x = LElement::from_coeffs(&ext, a).unwrap();
        let y = LElement::from_coeffs(&ext, b).unwrap();
        (ext, x, y)
    })
}

fn add_val(a: Valuation, b: Valuation) -> Valuation {
    match (a, b) {
        (Valuation::Finite(x), Valuation::Finite(y)) => Valuation::Finite(x + y),
        _ => Valuation::Infinite,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wp_is_additive((a, b) in pair()) {
        prop_assert_eq!(wp(&(&a + &b)), &wp(&a) + &wp(&b));
    }

    #[test]
    fn valuation_is_a_valuation((a, b) in pair()) {
        prop_assert_eq!((&a * &b).valuation(), add_val(a.valuation(), b.valuation()));
        let sum = (&a + &b).valuation();
        prop_assert!(sum >= a.valuation().min(b.valuation()));
        if a.valuation() != b.valuation() {
            prop_assert_eq!(sum, a.valuation().min(b.valuation()));
        }
    }

    #[test]
    fn print_parse_round_trip((a, _b) in pair()) {
        let text = a.to_string();
        prop_assert_eq!(wilddepth_core::parse_series(&text, a.spec()).unwrap(), a);
    }

    #[test]
    fn reduction_witness_and_invariance(
        spec in spec_strategy(),
        m_seed in 1i64..12,
        lower in any::<u64>(),
        r_seed in any::<u64>(),
    ) {
        let p = spec.p() as i64;
        // Force a pole of order prime to p, then scramble with ℘-images.
        let m = if m_seed % p == 0 { m_seed + 1 } else { m_seed };
        let lead = FqElem::from_index(spec, 1 + lower % (spec.q() - 1));
        let mut a = LaurentSeries::monomial(lead, -m);
        a = &a + &LaurentSeries::monomial(FqElem::from_index(spec, lower / 7), -m + 1 + (lower % 3) as i64);
        let red = as_reduce(&a).unwrap();
        prop_assert_eq!(&a - &red.reduced, wp(&red.witness));
        prop_assert_eq!(red.m as i64, m);

        let r = LaurentSeries::from_terms(spec, (0..3).map(|i| {
            let e = 2 - ((r_seed >> (8 * i)) % 9) as i64;
            (e, FqElem::from_index(spec, (r_seed >> (8 * i + 4)) % spec.q()))
        }));
        let scrambled = &a + &wp(&r);
        let red2 = as_reduce(&scrambled).unwrap();
        prop_assert_eq!(&scrambled - &red2.reduced, wp(&red2.witness));
        prop_assert_eq!(red2.m, red.m);
        prop_assert_eq!(red2.reduced.valuation(), Valuation::Finite(-(red.m as i64)));
    }

    #[test]
    fn l_valuation_is_multiplicative((_ext, x, y) in ext_and_elements()) {
        prop_assert_eq!((&x * &y).valuation(), add_val(x.valuation(), y.valuation()));
    }

    #[test]
    fn l_valuation_extends_base((ext, x, _y) in ext_and_elements()) {
        let c = x.coeffs()[0].clone();
        let embedded = LElement::from_base(&ext, c.clone());
        let expected = match c.valuation() {
            Valuation::Finite(v) => Valuation::Finite(ext.p() as i64 * v),
            Valuation::Infinite => Valuation::Infinite,
        };
        prop_assert_eq!(embedded.valuation(), expected);
    }

    #[test]
    fn galois_action_is_a_ring_homomorphism((ext, x, y) in ext_and_elements(), j in 0u32..5, k in 0u32..5) {
        let p = ext.p();
        let (j, k) = (j % p, k % p);
        prop_assert_eq!((&x * &y).galois_apply(j), &x.galois_apply(j) * &y.galois_apply(j));
        prop_assert_eq!((&x + &y).galois_apply(j), &x.galois_apply(j) + &y.galois_apply(j));
        prop_assert_eq!(x.galois_apply(k).galois_apply(j), x.galois_apply((j + k) % p));
        prop_assert_eq!(x.galois_apply(0), x.clone());
    }

    #[test]
    fn galois_shift_bound_on_integral_elements((ext, x, _y) in ext_and_elements(), j in 1u32..5) {
        let j = 1 + (j - 1) % (ext.p() - 1);
        // Move x into the valuation ring by multiplying with a power of t.
        let shift = match x.valuation() {
            Valuation::Finite(v) if v < 0 => (-v + ext.p() as i64 - 1) / ext.p() as i64,
            _ => 0,
        };
        let x = &x * &LElement::from_base(&ext, LaurentSeries::t_pow(ext.spec(), shift));
        if let Valuation::Finite(v) = x.valuation() {
            prop_assert!(v >= 0);
            let moved = (&x.galois_apply(j) - &x).valuation();
            prop_assert!(moved >= Valuation::Finite(v + ext.m() as i64), "{moved:?} vs {v} + m");
        }
    }

    #[test]
    fn herbrand_inverse_on_grid(p in prop::sample::select(vec![2u32, 3, 5, 7]), m_seed in 1u32..12) {
        let m = if m_seed % p == 0 { m_seed + 1 } else { m_seed };
        let ext = ASExtension::from_pole_order(FieldSpec::prime(p).unwrap(), m).unwrap();
        let phi = phi_from_ramification(&ramification_breaks(&ext).unwrap()).unwrap();
        let psi = phi.inverse().unwrap();
        prop_assert!(phi.is_concave());
        for den in [1i64, 2, 3, 5, 6] {
            for num in 0..=(3 * p * m) as i64 * den {
                let u = Rational::new(num, den).unwrap();
                prop_assert_eq!(psi.eval(phi.eval(u).unwrap()).unwrap(), u);
                prop_assert_eq!(phi.eval(psi.eval(u).unwrap()).unwrap(), u);
            }
        }
    }
}

#[test]
fn shift_equality_at_uniformizer() {
    for (p, m) in [(2u32, 1u32), (2, 7), (3, 4), (5, 6), (7, 3)] {
        let ext = ASExtension::from_pole_order(FieldSpec::prime(p).unwrap(), m).unwrap();
        let pi = uniformizer(&ext);
        for j in 1..p {
            assert_eq!((&pi.galois_apply(j) - &pi).valuation(), Valuation::Finite(m as i64 + 1));
        }
    }
}

#[test]
fn breaks_agree_with_reduction_for_unreduced_inputs() {
    let spec = FieldSpec::prime(3).unwrap();
    for m in [1i64, 2, 4, 5, 7] {
        let base = LaurentSeries::t_pow(spec, -m);
        let noise = LaurentSeries::from_terms(spec, [(-2 * m, FqElem::from_int(spec, 2)), (-1, FqElem::one(spec))]);
        let unreduced = &base + &wp(&noise);
        let ext = ASExtension::new(&unreduced).unwrap();
        assert_eq!(ext.m() as i64, m);
        assert_eq!(ramification_breaks(&ext).unwrap().breaks(), vec![m]);
    }
}
