use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use iwr_core::arith::ntheory::{gcd, mod_inv};
use iwr_core::arith::{int, rat, Rational};
use iwr_core::dirichlet::DirichletCharacter;
use iwr_core::modsym::{eigensymbol, genus_x0, twist_symbol, CfChain, ModularSymbolSpace, SymbolFunctional};

fn e11(sign: i8) -> Arc<SymbolFunctional> {
    static S: OnceLock<Arc<ModularSymbolSpace>> = OnceLock::new();
    let space = S.get_or_init(|| Arc::new(ModularSymbolSpace::build(11).unwrap()));
    Arc::new(eigensymbol(space, &[(2, int(-2)), (3, int(-1))], sign).unwrap())
}

fn act(g: [i64; 4], r: &Rational) -> Option<Rational> {
    let den = int(g[2]) * r + int(g[3]);
    if num_traits::Zero::is_zero(&den) {
        return None;
    }
    Some((int(g[0]) * r + int(g[1])) / den)
}

fn gamma0(n: u64, k: i64, d: i64) -> Option<[i64; 4]> {
    let c = n as i64 * k;
    if c == 0 || gcd(c.unsigned_abs(), d.unsigned_abs()) != 1 {
        return None;
    }
    let a = mod_inv(d.rem_euclid(c.abs()) as u64, c.unsigned_abs())? as i64;
    Some([a, (a * d - 1) / c, c, d])
}

#[test]
fn dimensions_follow_the_genus() {
    // 2g cuspidal plus (number of cusps - 1) Eisenstein
    for (n, g) in [(11u64, 1u64), (23, 2), (37, 2), (19, 1), (1, 0), (2, 0)] {
        assert_eq!(genus_x0(n), g, "N = {n}");
        let s = ModularSymbolSpace::build(n).unwrap();
        assert_eq!(s.cuspidal_dimension() as u64, 2 * g, "N = {n}");
    }
}

#[test]
fn odd_symbol_vanishes_at_zero() {
    assert!(num_traits::Zero::is_zero(&e11(-1).evaluate(&rat(0, 1))));
    assert!(!num_traits::Zero::is_zero(&e11(1).evaluate(&rat(0, 1))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]
    #[test]
    fn paths_are_gamma0_invariant(a in -400i64..400, b in 1i64..400, c in -400i64..400, d in 1i64..400,
                                  k in 1i64..5, dd in -30i64..30, sign in prop_oneof![Just(1i8), Just(-1i8)]) {
        let x = e11(sign);
        let (r, s) = (rat(a, b), rat(c, d));
        prop_assert_eq!(x.evaluate_with(&r, CfChain::Floor), x.evaluate_with(&r, CfChain::Ceiling));
        let Some(g) = gamma0(11, k, dd) else { return Ok(()) };
        let (Some(gr), Some(gs)) = (act(g, &r), act(g, &s)) else { return Ok(()) };
        prop_assert_eq!(x.path(&gr, &gs), x.path(&r, &s));
        // the star involution: x±(-r) = ±x±(r)
        prop_assert_eq!(x.evaluate(&-r.clone()), int(sign as i64) * x.evaluate(&r));
        // Hecke eigenvalues at good primes, against the curve's point counts
        for (l, al) in [(2u64, -2i64), (3, -1), (5, 1), (7, -2), (13, 4)] {
            prop_assert_eq!(x.hecke_image(l, &r), int(al) * x.evaluate(&r));
        }
    }

    #[test]
    fn twisted_symbols_are_invariant_at_the_twisted_level(a in -200i64..200, b in 1i64..200, k in 1i64..3, dd in -20i64..20) {
        let chi = DirichletCharacter::quadratic(-3).unwrap();
        let t = twist_symbol(&e11(1), &chi).unwrap();
        prop_assert_eq!(t.sign(), -1);
        let r = rat(a, b);
        let Some(g) = gamma0(99, k, dd) else { return Ok(()) };
        let Some(gr) = act(g, &r) else { return Ok(()) };
        prop_assert_eq!(t.path(&gr, &act(g, &rat(0, 1)).unwrap()), t.path(&r, &rat(0, 1)));
    }
}
