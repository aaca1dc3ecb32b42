use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use iwr_core::arith::{int, rat};
use iwr_core::dirichlet::DirichletCharacter;
use iwr_core::iwasawa::IwasawaContext;
use iwr_core::modsym::{eigensymbol, ModularSymbolSpace, SymbolFunctional};
use iwr_core::padic_l::{branch_series, branch_value_trivial, unit_root, SymbolPair};

fn base(sign: i8) -> Arc<SymbolFunctional> {
    static S: OnceLock<Arc<ModularSymbolSpace>> = OnceLock::new();
    let space = S.get_or_init(|| Arc::new(ModularSymbolSpace::build(11).unwrap()));
    Arc::new(eigensymbol(space, &[(2, int(-2)), (3, int(-1))], sign).unwrap())
}

fn pair(cp: (i64, i64), cm: (i64, i64)) -> SymbolPair {
    let plus = Arc::new(base(1).scaled(&rat(cp.0, cp.1)));
    let minus = Arc::new(base(-1).scaled(&rat(cm.0, cm.1)));
    SymbolPair::new(plus, minus, "11.2.a.a", DirichletCharacter::trivial(1)).unwrap()
}

const AP: [(u64, i64); 3] = [(3, -1), (5, 1), (7, -2)];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn invariants_ignore_unit_rescaling(pi in 0usize..3, j in 0i64..6, a in 1i64..60, b in 1i64..60, c in 1i64..60, d in 1i64..60) {
        let (p, ap) = AP[pi];
        let j = j % (p as i64 - 1);
        prop_assume!([a, b, c, d].iter().all(|x| x % p as i64 != 0));
        let ctx = IwasawaContext::new(p, 6, p as usize).unwrap();
        let alpha = unit_root(ap, p, 6, false).unwrap();
        let one = pair((1, 1), (1, 1));
        let other = pair((a, b), (c, d));
        let s1 = branch_series(&one, &alpha, j, 1, false, &ctx).unwrap();
        let s2 = branch_series(&other, &alpha, j, 1, false, &ctx).unwrap();
        let (w1, w2) = (s1.series.invariants(), s2.series.invariants());
        prop_assert_eq!(w1.map(|w| (w.mu, w.lambda)).ok(), w2.map(|w| (w.mu, w.lambda)).ok());
        let v1 = branch_value_trivial(&one, p, &alpha, j, false, 6).unwrap();
        let v2 = branch_value_trivial(&other, p, &alpha, j, false, 6).unwrap();
        prop_assert_eq!(v1.valuation(), v2.valuation());
    }

    #[test]
    fn levels_are_compatible(pi in 0usize..3, j in 0i64..6) {
        let (p, ap) = AP[pi];
        let j = j % (p as i64 - 1);
        let ctx = IwasawaContext::new(p, 5, p as usize * p as usize).unwrap();
        let alpha = unit_root(ap, p, 5, false).unwrap();
        let x = pair((1, 1), (1, 1));
        let lo = branch_series(&x, &alpha, j, 1, false, &ctx).unwrap();
        let hi = branch_series(&x, &alpha, j, 2, false, &ctx).unwrap();
        prop_assert_eq!(hi.series.reduce_omega(1), lo.series.reduce_omega(1));
    }
}

#[test]
fn sign_mismatch_is_rejected() {
    assert!(SymbolPair::new(base(-1), base(1), "x", DirichletCharacter::trivial(1)).is_err());
}

#[test]
fn level_11_branches_have_trivial_invariants_at_7() {
    // 7 is ordinary and not Eisenstein for the level-11 curve, and L(E,1) ≠ 0
    let ctx = IwasawaContext::new(7, 8, 7).unwrap();
    let alpha = unit_root(-2, 7, 8, false).unwrap();
    let w = branch_series(&pair((1, 1), (1, 1)), &alpha, 0, 1, false, &ctx).unwrap().series.invariants().unwrap();
    assert_eq!((w.mu, w.lambda), (0, 0));
}
