use num_bigint::BigInt;
use proptest::prelude::*;

use iwr_core::arith::ntheory::{divisors, gamma0_index};
use iwr_core::arith::{int, rat, CyclotomicNumber, Rational};
use iwr_core::dirichlet::DirichletCharacter;
use iwr_core::qseries::{
    bernoulli_number, check_congruence, eisenstein_series, generalized_bernoulli, mazur_eisenstein, sturm_bound,
    CongruenceIdealSpec, NewformData,
};

#[test]
fn bernoulli_numbers() {
    let known = [(0, rat(1, 1)), (1, rat(-1, 2)), (2, rat(1, 6)), (4, rat(-1, 30)), (6, rat(1, 42)), (12, rat(-691, 2730))];
    for (n, b) in known {
        assert_eq!(bernoulli_number(n), b, "B_{n}");
    }
    assert_eq!(bernoulli_number(7), rat(0, 1));
}

#[test]
fn first_bernoulli_of_imaginary_quadratic_characters() {
    // B_{1,χ} = -2h/w
    for (d, h, w) in [(-3i64, 1, 6), (-4, 1, 4), (-7, 1, 2), (-8, 1, 2), (-23, 3, 2), (-47, 5, 2)] {
        let b = generalized_bernoulli(&DirichletCharacter::quadratic(d).unwrap(), 1);
        assert_eq!(b.to_rational(), Some(rat(-2 * h, w)), "d = {d}");
    }
}

#[test]
fn mazur_eisenstein_coefficients() {
    let g = mazur_eisenstein(11, 60);
    assert_eq!(g.coeff(0).clone(), rat(10, 24));
    for n in 1..=60u64 {
        let want: i64 = divisors(n).iter().map(|&d| d as i64).sum::<i64>()
            - if n % 11 == 0 { 11 * divisors(n / 11).iter().map(|&d| d as i64).sum::<i64>() } else { 0 };
        assert_eq!(g.coeff(n as usize).clone(), int(want), "n = {n}");
    }
}

#[test]
fn sturm_bounds() {
    assert_eq!(gamma0_index(11), 12);
    assert_eq!(sturm_bound(2, 11), 2);
    assert_eq!(sturm_bound(2, 55), 12);
    assert_eq!(sturm_bound(12, 1), 1);
}

#[test]
fn level_11_is_eisenstein_mod_5() {
    let f = NewformData::from_json(include_str!("../../../data/newforms/11.2.a.a.json")).unwrap();
    let e = mazur_eisenstein(11, 100);
    let rep = check_congruence(&f.to_rational_qexpansion().unwrap(), &e, &CongruenceIdealSpec::new(5), 100).unwrap();
    // the constant term 10/24 is already divisible by 5
    assert!(rep.congruent(), "{:?}", rep.mismatches);
    let rep7 = check_congruence(&f.to_rational_qexpansion().unwrap(), &e, &CongruenceIdealSpec::new(7), 20).unwrap();
    assert!(!rep7.congruent());
}

fn char_from(n: u64, k: u64) -> DirichletCharacter {
    let gens = iwr_core::dirichlet::unit_group_generators(n);
    let order = gens.iter().fold(1, |acc, &(_, o)| num_integer::lcm(acc, o));
    let vals: Vec<(u64, i64)> = gens.iter().map(|&(g, o)| (g, ((k % o) * (order / o)) as i64)).collect();
    DirichletCharacter::from_generator_values(n, order, &vals).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn eisenstein_coefficients_are_divisor_sums(u in 1u64..10, v in 1u64..10, ku in 0u64..12, kv in 0u64..12,
                                                 l in 1u32..6, n in 1usize..80) {
        let (theta, phi) = (char_from(u, ku), char_from(v, kv));
        let Ok(g) = eisenstein_series(&theta, &phi, l, 80) else { return Ok(()) };
        let mut want = CyclotomicNumber::zero(1);
        for d in divisors(n as u64) {
            let w = Rational::from_integer(BigInt::from(d).pow(l - 1));
            want = &want + &(&theta.eval(d as i64) * &phi.eval((n as u64 / d) as i64)).scale(&w);
        }
        prop_assert!((g.coeff(n) - &want).is_zero());
        prop_assert_eq!(g.level, u * v);
    }
}
