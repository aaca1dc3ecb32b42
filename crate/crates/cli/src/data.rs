//! Bundled newform files and form setup for the L-function pipeline.

use std::path::Path;
use std::sync::Arc;

use iwr_core::arith::ntheory::{gcd, is_prime, primes_up_to};
use iwr_core::arith::{PadicNumber, Rational};
use iwr_core::dirichlet::DirichletCharacter;
use iwr_core::modsym::{cache, eigensymbol, twist_symbol};
use iwr_core::padic_l::{unit_root, SigmaFactor, SymbolPair};
use iwr_core::qseries::NewformData;

use crate::config::{compute_err, CliError};

const BUNDLED: &[(&str, &str)] = &[
    ("11.2.a.a", include_str!("../../../data/newforms/11.2.a.a.json")),
    ("19.2.a.a", include_str!("../../../data/newforms/19.2.a.a.json")),
    ("23.2.a.a", include_str!("../../../data/newforms/23.2.a.a.json")),
    ("52.2.a.a", include_str!("../../../data/newforms/52.2.a.a.json")),
    ("1.12.a.a", include_str!("../../../data/newforms/1.12.a.a.json")),
];

pub fn bundled_labels() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(l, _)| *l)
}

pub fn bundled(label: &str) -> Result<NewformData, CliError> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(l, _)| *l == label)
        .ok_or_else(|| CliError::Ingest(format!("no bundled newform {label}")))?;
    NewformData::from_json(text).map_err(|e| CliError::Ingest(format!("{label}: {e}")))
}

/// A bundled label or a path to a JSON file.
pub fn load_newform(spec: &Path) -> Result<NewformData, CliError> {
    if let Some(s) = spec.to_str() {
        if BUNDLED.iter().any(|(l, _)| *l == s) {
            return bundled(s);
        }
    }
    let text = std::fs::read_to_string(spec).map_err(|e| CliError::Ingest(format!("{}: {e}", spec.display())))?;
    NewformData::from_json(&text).map_err(|e| CliError::Ingest(format!("{}: {e}", spec.display())))
}

/// `a(n)` of a form with rational coefficients.
pub fn rational_a(f: &NewformData, n: usize) -> Result<Rational, CliError> {
    f.a(n).to_rational().ok_or_else(|| CliError::Ingest(format!("{}: a({n}) is not rational", f.label)))
}

/// Symbols and local data of `f ⊗ χ` at `p`, for weight-2 `f` with rational coefficients.
#[derive(Debug, Clone)]
pub struct FormSetup {
    pub p: u64,
    pub pair: SymbolPair,
    pub level: u64,
    pub alpha: PadicNumber,
    pub a_p: i64,
    pub multiplicative: bool,
    pub label: String,
    base: NewformData,
    twist: DirichletCharacter,
}

fn small(q: &Rational) -> Result<i64, CliError> {
    if !q.is_integer() {
        return Err(CliError::Ingest(format!("coefficient {q} is not integral")));
    }
    q.to_integer().try_into().map_err(|_| CliError::Ingest(format!("coefficient {q} too large")))
}

impl FormSetup {
    pub fn new(
        f: &NewformData,
        p: u64,
        twist: Option<&DirichletCharacter>,
        cache_dir: Option<&Path>,
        prec: u32,
    ) -> Result<Self, CliError> {
        if f.weight != 2 {
            return Err(CliError::Config(format!("{}: modular symbols need weight 2", f.label)));
        }
        let space = Arc::new(cache::load_or_build(f.level, cache_dir).map_err(compute_err)?);
        let targets: Vec<(u64, Rational)> = primes_up_to(50)
            .into_iter()
            .filter(|&l| f.level % l != 0)
            .take(3)
            .map(|l| Ok((l, rational_a(f, l as usize)?)))
            .collect::<Result<_, CliError>>()?;
        let sym = |s: i8| eigensymbol(&space, &targets, s).map(Arc::new).map_err(compute_err);
        let chi = twist.map(|c| c.primitive()).unwrap_or_else(|| DirichletCharacter::trivial(1));
        let c = chi.conductor();
        if gcd(c, f.level) != 1 || (c > 1 && c % p == 0) {
            return Err(CliError::Config(format!("twist conductor {c} must be prime to {} and p", f.level)));
        }
        let (plus, minus, label) = if c == 1 {
            (sym(1)?, sym(-1)?, f.label.clone())
        } else {
            let e = chi.parity() as i8;
            let plus = Arc::new(twist_symbol(&sym(e)?, &chi).map_err(compute_err)?);
            let minus = Arc::new(twist_symbol(&sym(-e)?, &chi).map_err(compute_err)?);
            (plus, minus, format!("{} x {}", f.label, chi.descriptor()))
        };
        let pair = SymbolPair::new(plus, minus, label.clone(), chi.clone()).map_err(compute_err)?;
        let level = f.level * c * c;
        if level % (p * p) == 0 {
            return Err(CliError::Config(format!("additive reduction at {p}")));
        }
        let multiplicative = level % p == 0;
        let chi_p = chi.eval(p as i64).to_rational().ok_or_else(|| CliError::Config("twist must be quadratic".into()))?;
        let a_p = small(&rational_a(f, p as usize)?)? * small(&chi_p)?;
        let alpha = unit_root(a_p, p, prec, multiplicative).map_err(compute_err)?;
        Ok(FormSetup { p, pair, level, alpha, a_p, multiplicative, label, base: f.clone(), twist: chi })
    }

    /// `a(ℓ)` of the twisted form.
    pub fn a_twisted(&self, l: u64) -> Result<i64, CliError> {
        let c = self.twist.eval(l as i64).to_rational().unwrap_or_default();
        Ok(small(&rational_a(&self.base, l as usize)?)? * small(&c)?)
    }

    /// `1 - a(ℓ)X + ε(ℓ)ℓX²`, with `ε(ℓ) = 0` for `ℓ` dividing the level.
    pub fn euler_factor(&self, l: u64, prec: u32) -> Result<SigmaFactor, CliError> {
        if !is_prime(l) || l == self.p {
            return Err(CliError::Config(format!("Euler factor at {l}")));
        }
        let p = self.p;
        let a = self.a_twisted(l)?;
        let eps = if self.level % l == 0 { 0 } else { l as i64 };
        let coeffs = vec![
            PadicNumber::from_i64(1, p, prec),
            PadicNumber::from_i64(-a, p, prec),
            PadicNumber::from_i64(eps, p, prec),
        ];
        Ok((l, coeffs))
    }
}
