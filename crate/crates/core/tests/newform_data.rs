//! The bundled coefficient files against independent sources: point counts on curve models,
//! a genus-2 model of X0(23), and Ramanujan's congruence for τ.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use iwr_core::arith::ntheory::{is_prime, sigma};
use iwr_core::arith::{int, Rational};
use iwr_core::modsym::ModularSymbolSpace;
use iwr_core::qseries::NewformData;

fn load(text: &str) -> NewformData {
    NewformData::from_json(text).unwrap()
}

fn a_int(f: &NewformData, n: usize) -> i64 {
    f.a(n).to_rational().unwrap().to_integer().to_i64().unwrap()
}

fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let (mut b, mut e) = (a, (p - 1) / 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// `ℓ + 1 - #E(F_ℓ)` for `y² + a1xy + a3y = x³ + a2x² + a4x + a6`, `ℓ` odd.
fn trace_of_frobenius(a: [i64; 5], l: i64) -> i64 {
    let [a1, a2, a3, a4, a6] = a;
    // complete the square in y
    let mut count = 1;
    for x in 0..l {
        let lin = a1 * x + a3;
        let rhs = x * x % l * x + a2 * x % l * x + a4 * x + a6;
        let disc = lin * lin + 4 * rhs;
        count += 1 + legendre(disc, l);
    }
    l + 1 - count
}

fn check_curve(text: &str, model: [i64; 5], level: i64) {
    let f = load(text);
    for l in (3..100).filter(|&l| is_prime(l as u64) && level % l != 0) {
        assert_eq!(a_int(&f, l as usize), trace_of_frobenius(model, l), "{} at {l}", f.label);
    }
}

#[test]
fn elliptic_curve_files() {
    check_curve(include_str!("../../../data/newforms/11.2.a.a.json"), [0, -1, 1, -10, -20], 11);
    check_curve(include_str!("../../../data/newforms/19.2.a.a.json"), [0, 1, 1, -9, -15], 19);
    check_curve(include_str!("../../../data/newforms/52.2.a.a.json"), [0, 0, 0, 1, -10], 52);
}

#[test]
fn level_52_traces_match_the_symbol_space() {
    // S2(52) = 52a + two copies each of 26a and 26b
    let space = ModularSymbolSpace::build(52).unwrap();
    let f = load(include_str!("../../../data/newforms/52.2.a.a.json"));
    for l in [3i64, 5, 7, 11] {
        let want = a_int(&f, l as usize)
            + 2 * trace_of_frobenius([1, 0, 1, -5, -8], l)
            + 2 * trace_of_frobenius([1, -1, 1, -3, 3], l);
        assert_eq!(space.cuspidal_trace(l as u64, Some(1)).unwrap(), int(want), "l = {l}");
    }
}

#[test]
fn level_23_traces_match_a_genus_two_model() {
    // X0(23): y² = x⁶ - 8x⁵ + 2x⁴ + 2x³ - 11x² + 10x - 7
    let poly = [-7i64, 10, -11, 2, 2, -8, 1];
    let f = load(include_str!("../../../data/newforms/23.2.a.a.json"));
    assert_eq!(f.degree(), 2);
    for l in (3..80i64).filter(|&l| is_prime(l as u64) && l != 23) {
        let mut points = 2; // two points at infinity: leading coefficient 1
        for x in 0..l {
            let v = poly.iter().rev().fold(0i64, |acc, &c| (acc * x + c).rem_euclid(l));
            points += 1 + legendre(v, l);
        }
        // trace over Q of a(ℓ) = c0 + c1·β with tr(β) = 1
        let c = f.a(l as usize).coeffs().to_vec();
        let tr: Rational = int(2) * &c[0] + c.get(1).cloned().unwrap_or_else(|| int(0));
        assert_eq!(tr, int(l + 1 - points), "l = {l}");
    }
}

#[test]
fn discriminant_file() {
    let f = load(include_str!("../../../data/newforms/1.12.a.a.json"));
    let known = [1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612];
    for (i, &t) in known.iter().enumerate() {
        assert_eq!(a_int(&f, i + 1), t, "tau({})", i + 1);
    }
    for n in 1..=f.n_max() {
        let tau = f.a(n).to_rational().unwrap().to_integer();
        let diff: BigInt = tau - sigma(n as u64, 11);
        assert_eq!(diff % 691, BigInt::from(0), "n = {n}");
    }
}
