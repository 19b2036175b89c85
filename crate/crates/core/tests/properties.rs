//! Randomized invariants across modules.

use proptest::prelude::*;

use mpl_coalgebra::coalgebra::{delta, delta_symbol, Cobracket};
use mpl_coalgebra::fields::FieldElem;
use mpl_coalgebra::numerics::{realize, Cx};
use mpl_coalgebra::relations::{
    builtin_schemata, check_concrete, depth_reduction_11, five_term, reduce_to_depth1, sym_12, weight3_111, weight3_21,
};
use mpl_coalgebra::symbolic::parse::{parse_expression, parse_words};
use mpl_coalgebra::symbolic::{admissible, Arg, Atom, Symbol, SymbolComb};
use mpl_coalgebra::{Error, Q};
use num_complex::Complex64;

const ATOMS: [&str; 3] = ["x", "y", "z"];

fn group_arg() -> impl Strategy<Value = Arg> {
    proptest::collection::vec(-2i32..3, 3).prop_map(|es| {
        Arg::from_exponents(ATOMS.iter().zip(es).map(|(a, e)| (Atom::new(a), e)))
    })
}

fn any_arg() -> impl Strategy<Value = Arg> {
    prop_oneof![8 => group_arg(), 1 => Just(Arg::Zero), 1 => Just(Arg::Infinity)]
}

/// An admissible symbol with group arguments, depth 1..=3, weight <= 5.
fn symbol() -> impl Strategy<Value = Symbol> {
    (1usize..=3)
        .prop_flat_map(|d| {
            (
                proptest::collection::vec(group_arg(), d),
                proptest::collection::vec(1u32..3, d),
            )
        })
        .prop_filter("admissible", |(a, _)| admissible(a))
        .prop_map(|(a, i)| Symbol::new(a, i))
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn admissibility_is_inversion_symmetric(args in proptest::collection::vec(any_arg(), 1..5)) {
        let mirrored: Vec<Arg> = args.iter().rev().map(Arg::inverse).collect();
        prop_assert_eq!(admissible(&args), admissible(&mirrored));
    }

    #[test]
    fn cobracket_is_graded_and_round_trips(s in symbol(), prime in any::<bool>()) {
        let which = if prime { Cobracket::DeltaPrime } else { Cobracket::Delta };
        let d = delta_symbol(&s, which).unwrap();
        for (w, _) in d.iter() {
            let comps = w.wedge_components().unwrap();
            prop_assert_eq!(comps.len(), 2);
            prop_assert_ne!(comps[0], comps[1]);
            prop_assert_eq!(w.weight(), s.weight());
        }
        prop_assert_eq!(parse_words(&d.to_string()).unwrap(), d);
    }

    #[test]
    fn cobracket_is_linear(a in symbol(), b in symbol(), ca in -3i64..4, cb in -3i64..4) {
        let mut comb = SymbolComb::zero();
        comb.add_term(a.clone(), q(ca));
        comb.add_term(b.clone(), q(cb));
        let lhs = delta(&comb, Cobracket::Delta).unwrap();
        let mut rhs = delta_symbol(&a, Cobracket::Delta).unwrap().scaled(&q(ca));
        rhs.add_scaled(&delta_symbol(&b, Cobracket::Delta).unwrap(), &q(cb));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_print(syms in proptest::collection::vec(symbol(), 1..4), cs in proptest::collection::vec(-5i64..6, 3)) {
        let mut comb = SymbolComb::zero();
        for (s, c) in syms.into_iter().zip(cs) {
            comb.add_term(s, Q::new(c.into(), 2.into()));
        }
        let printed = comb.to_string();
        let again = parse_expression(&printed).unwrap();
        prop_assert_eq!(again.to_string(), printed);
        prop_assert_eq!(again, comb);
    }

    #[test]
    fn instantiation_is_admissible_or_guarded(vals in proptest::collection::vec((-9i64..10, 1i64..10), 3)) {
        let vals: Vec<Q> = vals.into_iter().map(|(n, d)| Q::new(n.into(), d.into())).collect();
        for s in builtin_schemata() {
            match s.instantiate(&vals[..s.arity()]) {
                Ok(terms) => {
                    for (sym, _) in &terms {
                        prop_assert!(check_concrete(&sym.args).is_ok(), "{} gave {}", s.name, sym);
                        prop_assert!(!sym.args.iter().any(FieldElem::is_zero));
                    }
                }
                Err(Error::Guard(_)) => {}
                Err(e) => prop_assert!(false, "{}: unexpected error {}", s.name, e),
            }
        }
    }

    #[test]
    fn schemata_realize_to_zero_before_and_after_rewriting(
        r in proptest::collection::vec((0.1f64..0.9, 0.0f64..std::f64::consts::TAU, any::<bool>()), 3),
    ) {
        // each schema at a random point realizes to zero, and rewriting it
        // with depth-1 symbols first gives the same value
        let point: Vec<Cx> = r
            .iter()
            .map(|&(m, t, inv)| Cx(Complex64::from_polar(if inv { 1.0 / m } else { m }, t)))
            .collect();
        for s in [five_term(), depth_reduction_11(), weight3_21(), weight3_111(), sym_12()] {
            let like = point[0];
            let terms: Vec<(Symbol<Cx>, Q)> = match s
                .template
                .iter()
                .map(|(sym, c)| {
                    let args = sym
                        .args
                        .iter()
                        .map(|f| f.eval(&point[..s.arity()], &like))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok((Symbol::new(args, sym.index.clone()), c.clone()))
                })
                .collect::<Result<Vec<_>, Error>>()
            {
                Ok(t) => t,
                Err(_) => continue,
            };
            let terms: Vec<_> = terms.into_iter().filter(|(s, _)| !s.args.iter().any(FieldElem::is_zero)).collect();
            match (realize(&terms), reduce_to_depth1(&terms).and_then(|t| realize(&t))) {
                (Ok(a), Ok(b)) => {
                    prop_assert!(a.abs() < 1e-8, "{}: {}", s.name, a);
                    prop_assert!((a - b).abs() < 1e-8, "{}: {} vs {}", s.name, a, b);
                }
                (Err(Error::Guard(_)), _) | (_, Err(Error::Guard(_))) => {}
                (a, b) => prop_assert!(false, "{}: {:?} {:?}", s.name, a.err(), b.err()),
            }
        }
    }
}
