use std::sync::Arc;

use num_traits::Zero;

use super::*;
use crate::arith::{int, padic_valuation, rat, Rational, Valuation};
use crate::dirichlet::DirichletCharacter;

fn curve_symbol(n: u64, aps: &[(u64, i64)], sign: i8) -> SymbolFunctional {
    let space = Arc::new(build_space(n).unwrap());
    let target: Vec<(u64, Rational)> = aps.iter().map(|&(l, a)| (l, int(a))).collect();
    eigensymbol(&space, &target, sign).unwrap()
}

const A11: &[(u64, i64)] = &[(2, -2), (3, -1)];
const A19: &[(u64, i64)] = &[(2, 0), (3, -2)];
const A52: &[(u64, i64)] = &[(3, 0), (5, 2), (7, -2)];

/// `table = u·want` for one rational `u` that is a unit at `p`.
fn proportional_by_unit(table: &[Rational], want: &[Rational], p: u64) -> bool {
    let Some(i) = want.iter().position(|w| !w.is_zero()) else { return table.iter().all(|t| t.is_zero()) };
    let u = &table[i] / &want[i];
    if u.is_zero() || padic_valuation(&u, p).unwrap() != Valuation::Finite(0) {
        return false;
    }
    table.iter().zip(want).all(|(t, w)| *t == &u * w)
}

#[test]
fn eigenspaces() {
    let space = Arc::new(build_space(11).unwrap());
    for sign in [1, -1] {
        let s = eigensymbol(&space, &[(2, int(-2)), (3, int(-1))], sign).unwrap();
        assert_eq!(s.sign(), sign);
    }
    // Eisenstein eigenvalues live only in the + part
    let e = eigensymbol(&space, &[(2, int(3))], -1);
    assert_eq!(e.unwrap_err(), ModSymError::EigenDim { found: 0 });
    assert!(eigensymbol(&space, &[(2, int(3))], 1).is_ok());
    assert_eq!(eigensymbol(&space, &[], 1).unwrap_err(), ModSymError::EigenDim { found: 2 });
    for sign in [1, -1] {
        curve_symbol(52, A52, sign);
    }
}

#[test]
fn normalization_is_scale_free() {
    let s = curve_symbol(19, A19, 1);
    let g = s.generator_values();
    assert!(g.iter().all(|v| v.is_integer()));
    assert_eq!(crate::arith::content(&g), int(1));
    for c in [rat(-3, 7), rat(5, 1), rat(1, 1000)] {
        let t = s.scaled(&c).normalize().unwrap();
        assert_eq!(t.generator_values(), g);
        assert_eq!(t.evaluate(&rat(2, 7)), s.evaluate(&rat(2, 7)));
    }
}

#[test]
fn generator_paths_match_values() {
    let s = curve_symbol(37, &[(2, -2), (3, -3)], 1);
    let space = s.space().unwrap().clone();
    let g = s.generator_values();
    for (i, &(c, d)) in space.generators().iter().enumerate() {
        let [a, b, cc, dd] = p1::lift_to_sl2z(c, d, 37).unwrap();
        let at = |x: i64, y: i64| if y == 0 { Rational::zero() } else { s.evaluate(&rat(x, y)) };
        assert_eq!(at(b, dd) - at(a, cc), g[i], "generator {i}");
    }
}

#[test]
fn star_symmetry_and_chains() {
    for sign in [1, -1] {
        let s = curve_symbol(11, A11, sign);
        for (a, b) in [(1, 3), (2, 11), (5, 17), (-7, 9), (13, 5), (0, 1), (100, 37)] {
            let r = rat(a, b);
            assert_eq!(s.evaluate(&-r.clone()), &s.evaluate(&r) * int(sign as i64));
            assert_eq!(s.evaluate_with(&r, CfChain::Ceiling), s.evaluate(&r));
        }
    }
    let minus = curve_symbol(11, A11, -1);
    assert!(minus.evaluate(&int(0)).is_zero());
}

#[test]
fn hecke_compatibility() {
    let s = curve_symbol(11, A11, 1);
    for (l, al) in [(2u64, -2i64), (3, -1), (5, 1), (7, -2)] {
        for r in [rat(1, 5), rat(3, 7), rat(-2, 9), rat(0, 1)] {
            assert_eq!(s.hecke_image(l, &r), &s.evaluate(&r) * int(al), "l = {l}, r = {r}");
        }
    }
}

#[test]
fn level_19_tables() {
    let plus: Vec<Rational> = vec![rat(-1, 2), int(1), int(1), rat(-1, 2)];
    let minus: Vec<Rational> = vec![rat(1, 2), int(0), int(0), rat(-1, 2)];
    for (sign, want) in [(1, plus), (-1, minus)] {
        let s = curve_symbol(19, A19, sign);
        let t: Vec<Rational> = (1..5).map(|b| s.table_value(&rat(b, 5))).collect();
        assert!(proportional_by_unit(&t, &want, 5), "sign {sign}: {t:?}");
    }
}

#[test]
fn twist_identity_and_restrictions() {
    let s = Arc::new(curve_symbol(11, A11, 1));
    let t = twist_symbol(&s, &DirichletCharacter::trivial(1)).unwrap();
    assert_eq!(t.evaluate(&rat(3, 7)), s.evaluate(&rat(3, 7)));
    assert!(matches!(
        twist_symbol(&s, &DirichletCharacter::quadratic(-11).unwrap()),
        Err(ModSymError::NotCoprime { .. })
    ));
    let w = DirichletCharacter::teichmuller(5, 1).unwrap();
    assert_eq!(twist_symbol(&s, &w).unwrap_err(), ModSymError::CharOrder(4));
}

#[test]
fn twisted_level_11_table() {
    let chi = DirichletCharacter::quadratic(-23).unwrap();
    let want_plus: Vec<Rational> = [2, 0, 5, 5, 0, 0, 5, 5, 0, 2].iter().map(|&x| int(x)).collect();
    let want_minus: Vec<Rational> = [0, 0, -5, 5, 0, 0, -5, 5, 0, 0].iter().map(|&x| int(x)).collect();
    for (tsign, want) in [(1i8, want_plus), (-1, want_minus)] {
        let inner = Arc::new(curve_symbol(11, A11, -tsign));
        let t = twist_symbol(&inner, &chi).unwrap();
        assert_eq!(t.sign(), tsign);
        assert_eq!(t.level(), 11 * 23 * 23);
        let table: Vec<Rational> = (1..11).map(|b| t.table_value(&rat(b, 11))).collect();
        assert!(proportional_by_unit(&table, &want, 11), "sign {tsign}: {table:?}");
    }
}

#[test]
fn double_twist_collapses_to_depletion() {
    // Σ_a Σ_b χ(a)χ(b) x(r + (a+b)/C) = χ(-1)·(C·x(r) - Σ_s x(r + s/C)) for prime C
    let c = 3i64;
    let chi = DirichletCharacter::quadratic(-3).unwrap();
    for sign in [1i8, -1] {
        let x = Arc::new(curve_symbol(11, A11, sign));
        let once = Arc::new(twist_symbol_unnormalized(&x, &chi).unwrap());
        let twice = twist_symbol_unnormalized(&once, &chi).unwrap();
        assert_eq!(twice.sign(), sign);
        for r in [rat(1, 5), rat(2, 7), rat(-4, 13), rat(1, 1)] {
            let mut depleted = &x.evaluate(&r) * int(c);
            for s in 0..c {
                depleted -= x.evaluate(&(&r + rat(s, c)));
            }
            assert_eq!(twice.evaluate(&r), -depleted, "r = {r}");
        }
    }
}
