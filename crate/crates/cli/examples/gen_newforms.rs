//! Regenerates `data/newforms/*.json`.
//!
//! Rational curves come from point counts on a minimal model; the level-23 pair comes from the
//! Hecke action on the plus cuspidal subspace, written in the basis `1, β` with `β² = β + 1`.
//!
//! Run with `cargo run -p iwr-cli --example gen_newforms -- data/newforms`.

use std::fs;
use std::path::PathBuf;

use iwr_core::arith::ntheory::{factor, is_prime};
use iwr_core::arith::{int, Rational};
use iwr_core::modsym::build_space;
use iwr_core::modsym::linalg::QMatrix;
use num_traits::Zero;
use serde_json::json;

const N_MAX: u64 = 100;

/// `#{(x, y) ∈ F_p²}` on `y² + a1xy + a3y = x³ + a2x² + a4x + a6`.
fn affine_points(a: [i64; 5], p: i64) -> i64 {
    let [a1, a2, a3, a4, a6] = a;
    let mut n = 0;
    for x in 0..p {
        for y in 0..p {
            let l = y * y + a1 * x * y + a3 * y;
            let r = x * x * x + a2 * x * x + a4 * x + a6;
            if (l - r).rem_euclid(p) == 0 {
                n += 1;
            }
        }
    }
    n
}

/// Multiplicative extension from prime values, `a(ℓ^{k+1}) = a(ℓ)a(ℓ^k) - ε(ℓ)ℓ^{w-1}a(ℓ^{k-1})`.
fn extend<T: Clone>(
    ap: impl Fn(u64) -> T,
    level: u64,
    weight: u32,
    one: T,
    mul: impl Fn(&T, &T) -> T,
    sub_scaled: impl Fn(&T, i64, &T) -> T,
) -> Vec<T> {
    let mut out = vec![one.clone()];
    for n in 2..=N_MAX {
        let mut acc = one.clone();
        for (l, e) in factor(n) {
            let a = ap(l);
            let c = if level % l == 0 { 0 } else { (l as i64).pow(weight - 1) };
            let (mut prev, mut cur) = (one.clone(), a.clone());
            for _ in 1..e {
                let next = sub_scaled(&mul(&a, &cur), c, &prev);
                prev = cur;
                cur = next;
            }
            acc = mul(&acc, &cur);
        }
        out.push(acc);
    }
    out
}

fn elliptic(label: &str, level: u64, model: [i64; 5]) -> serde_json::Value {
    let ap = |l: u64| l as i64 - affine_points(model, l as i64);
    let an = extend(ap, level, 2, 1i64, |a, b| a * b, |a, c, b| a - c * b);
    json!({ "label": label, "level": level, "weight": 2, "an": an })
}

/// Coordinates of `T_ℓ` restricted to an invariant plane.
fn restrict(t: &QMatrix, basis: &[Vec<Rational>]) -> [[Rational; 2]; 2] {
    let c0 = QMatrix::coordinates(basis, &t.mul_vec(&basis[0])).unwrap();
    let c1 = QMatrix::coordinates(basis, &t.mul_vec(&basis[1])).unwrap();
    [[c0[0].clone(), c1[0].clone()], [c0[1].clone(), c1[1].clone()]]
}

fn level_23() -> serde_json::Value {
    let s = build_space(23).unwrap();
    let basis = s.cuspidal_basis(Some(1));
    assert_eq!(basis.len(), 2);
    let t2 = restrict(&s.hecke_operator(2).unwrap(), &basis);
    // T_ℓ = c0 + c1·T2 on the plane; a(2) = -β picks the embedding with β ↦ (1+√5)/2
    let v = [int(1), int(0)];
    let w = [t2[0][0].clone(), t2[1][0].clone()];
    let det = &v[0] * &w[1] - &v[1] * &w[0];
    assert!(!det.is_zero());
    let ap = |l: u64| -> [Rational; 2] {
        if l == 2 {
            return [int(0), int(-1)];
        }
        let t = restrict(&s.hecke_operator(l).unwrap(), &basis);
        let tv = [t[0][0].clone(), t[1][0].clone()];
        let c0 = (&tv[0] * &w[1] - &tv[1] * &w[0]) / &det;
        let c1 = (&v[0] * &tv[1] - &v[1] * &tv[0]) / &det;
        // c0 + c1·a(2) = c0 - c1·β
        [c0, -c1]
    };
    // β² = β + 1
    let mul = |a: &[Rational; 2], b: &[Rational; 2]| -> [Rational; 2] {
        let bb = &a[1] * &b[1];
        [&a[0] * &b[0] + &bb, &a[0] * &b[1] + &a[1] * &b[0] + bb]
    };
    let sub_scaled = |a: &[Rational; 2], c: i64, b: &[Rational; 2]| [&a[0] - int(c) * &b[0], &a[1] - int(c) * &b[1]];
    let an = extend(ap, 23, 2, [int(1), int(0)], mul, sub_scaled);
    let an: Vec<serde_json::Value> =
        an.iter().map(|a| json!([a[0].to_string().parse::<i64>().unwrap(), a[1].to_string().parse::<i64>().unwrap()])).collect();
    json!({
        "label": "23.2.a.a",
        "level": 23,
        "weight": 2,
        "field_poly": [-1, -1, 1],
        "an": an,
        "seed_root_mod_p": { "11": 8 },
    })
}

/// `τ(n)` from `q∏(1 - q^n)^24`.
fn delta() -> serde_json::Value {
    let n = N_MAX as usize;
    let mut c = vec![0i128; n + 1];
    c[0] = 1;
    for k in 1..=n {
        for _ in 0..24 {
            for i in (k..=n).rev() {
                c[i] -= c[i - k];
            }
        }
    }
    let an: Vec<String> = (1..=n).map(|i| c[i - 1].to_string()).collect();
    json!({ "label": "1.12.a.a", "level": 1, "weight": 12, "an": an })
}

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data/newforms".into()));
    fs::create_dir_all(&dir).unwrap();
    assert!(is_prime(23));
    let forms = [
        ("11.2.a.a", elliptic("11.2.a.a", 11, [0, -1, 1, -10, -20])),
        ("19.2.a.a", elliptic("19.2.a.a", 19, [0, 1, 1, -9, -15])),
        ("52.2.a.a", elliptic("52.2.a.a", 52, [0, 0, 0, 1, -10])),
        ("23.2.a.a", level_23()),
        ("1.12.a.a", delta()),
    ];
    for (name, v) in forms {
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, serde_json::to_string(&v).unwrap() + "\n").unwrap();
        println!("wrote {}", path.display());
    }
}
