use proptest::prelude::*;

use iwr_core::arith::ntheory::{gcd, kronecker};
use iwr_core::arith::{int, CyclotomicNumber};
use iwr_core::dirichlet::{unit_group_generators, DirichletCharacter};

fn same(a: &CyclotomicNumber, b: &CyclotomicNumber) -> bool {
    (a - b).is_zero()
}

fn character(n: u64, picks: &[u64]) -> DirichletCharacter {
    let gens = unit_group_generators(n);
    let order = gens.iter().fold(1, |acc, &(_, o)| num_integer::lcm(acc, o));
    let vals: Vec<(u64, i64)> =
        gens.iter().zip(picks.iter().cycle()).map(|(&(g, o), &k)| (g, ((k % o) * (order / o)) as i64)).collect();
    DirichletCharacter::from_generator_values(n, order, &vals).unwrap()
}

proptest! {
    #[test]
    fn characters_are_multiplicative(n in 2u64..120, picks in proptest::collection::vec(0u64..1000, 4),
                                     a in 1i64..500, b in 1i64..500) {
        let c = character(n, &picks);
        prop_assert!(same(&c.eval(a * b), &(&c.eval(a) * &c.eval(b))));
        prop_assert!(same(&c.eval(a), &c.eval(a + n as i64)));
        prop_assert_eq!(n % c.conductor(), 0);
        let prim = c.primitive();
        prop_assert_eq!(prim.modulus(), c.conductor());
        if gcd(a as u64, n) == 1 {
            prop_assert!(same(&prim.eval(a), &c.eval(a)));
        }
        prop_assert_eq!(c.parity(), prim.parity());
        prop_assert!(same(&c.eval(-1), &CyclotomicNumber::from_int(1, c.parity())));
    }

    #[test]
    fn teichmuller_orders(pi in 0usize..6, r in -30i64..30) {
        let p = [3u64, 5, 7, 11, 13, 23][pi];
        let w = DirichletCharacter::teichmuller(p, r).unwrap();
        let k = r.rem_euclid(p as i64 - 1) as u64;
        prop_assert_eq!(w.order(), (p - 1) / gcd(k, p - 1));
    }

    #[test]
    fn quadratic_characters_are_kronecker_symbols(di in 0usize..8, a in 1u64..400) {
        let d = [-3i64, -4, -7, -8, -23, 5, 8, 13][di];
        let c = DirichletCharacter::quadratic(d).unwrap();
        prop_assert_eq!(c.conductor(), d.unsigned_abs());
        let want = CyclotomicNumber::from_int(1, kronecker(d, a));
        prop_assert!(same(&c.eval(a as i64), &want));
    }
}

#[test]
fn gauss_sum_of_quadratic_characters() {
    // G(χ_d)^2 = d for fundamental discriminants
    for d in [-3i64, -4, -7, -8, -23, 5, 8, 12, 13] {
        let g = DirichletCharacter::quadratic(d).unwrap().gauss_sum();
        assert_eq!(g.pow(2).to_rational(), Some(int(d)), "d = {d}");
    }
}

#[test]
fn descriptors_parse() {
    let c = DirichletCharacter::parse("teich11^3").unwrap();
    assert_eq!(c.order(), 10);
    let back = DirichletCharacter::parse(&c.descriptor()).unwrap();
    assert!(back.same_function(&c));
    assert!(DirichletCharacter::parse("teich12").is_err());
    let c = DirichletCharacter::parse("mod=7;gens=3:1;ord=6").unwrap();
    assert_eq!((c.order(), c.parity()), (6, -1));
}
