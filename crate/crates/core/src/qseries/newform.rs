use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::{json, Value};

use super::{Coefficient, NfElem, QError, QExpansion};
use crate::arith::ntheory::{factor, is_prime};
use crate::arith::{
    embed_cyclotomic, hensel_root_padic, parse_rational, PadicEmbedding, PadicNumber, Rational,
};
use crate::dirichlet::DirichletCharacter;

/// Ingested newform: Hecke field `Q[x]/f`, coefficients `a(1..n_max)` in the power basis.
#[derive(Debug, Clone)]
pub struct NewformData {
    pub label: String,
    pub level: u64,
    pub weight: u32,
    pub nebentypus: DirichletCharacter,
    pub field_poly: Arc<Vec<BigInt>>,
    /// `an[n-1] = a(n)`.
    pub an: Vec<NfElem>,
    pub seed_root_mod_p: BTreeMap<u64, u64>,
}

fn parse_scalar(v: &Value) -> Result<Rational, QError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|k| Rational::from_integer(BigInt::from(k)))
            .ok_or_else(|| QError::Ingest(format!("non-integer number {n}"))),
        Value::String(s) => parse_rational(s).ok_or_else(|| QError::Ingest(format!("bad rational {s:?}"))),
        other => Err(QError::Ingest(format!("expected a rational, got {other}"))),
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value, QError> {
    obj.get(key).ok_or_else(|| QError::Ingest(format!("missing field `{key}`")))
}

impl NewformData {
    pub fn from_json(text: &str) -> Result<Self, QError> {
        let v: Value = serde_json::from_str(text).map_err(|e| QError::Ingest(e.to_string()))?;
        let label = field(&v, "label")?.as_str().ok_or_else(|| QError::Ingest("label".into()))?.to_string();
        let level = field(&v, "level")?.as_u64().ok_or_else(|| QError::Ingest("level".into()))?;
        let weight = field(&v, "weight")?.as_u64().ok_or_else(|| QError::Ingest("weight".into()))? as u32;
        let neb = match v.get("nebentypus") {
            Some(Value::String(s)) => DirichletCharacter::parse(s)?,
            None => DirichletCharacter::trivial(1),
            Some(other) => return Err(QError::Ingest(format!("nebentypus {other}"))),
        };
        let poly: Vec<BigInt> = match v.get("field_poly") {
            Some(Value::Array(a)) => a
                .iter()
                .map(|c| {
                    let r = parse_scalar(c)?;
                    if !r.is_integer() {
                        return Err(QError::Ingest("field_poly must be integral".into()));
                    }
                    Ok(r.to_integer())
                })
                .collect::<Result<_, _>>()?,
            None => vec![BigInt::from(0), BigInt::one()],
            Some(other) => return Err(QError::Ingest(format!("field_poly {other}"))),
        };
        let poly = Arc::new(poly);
        let an_v = field(&v, "an")?.as_array().ok_or_else(|| QError::Ingest("an must be an array".into()))?;
        let an = an_v
            .iter()
            .map(|e| {
                let coeffs = match e {
                    Value::Array(items) => items.iter().map(parse_scalar).collect::<Result<Vec<_>, _>>()?,
                    scalar => vec![parse_scalar(scalar)?],
                };
                NfElem::new(poly.clone(), coeffs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut seeds = BTreeMap::new();
        if let Some(Value::Object(m)) = v.get("seed_root_mod_p") {
            for (k, s) in m {
                let p: u64 = k.parse().map_err(|_| QError::Ingest(format!("seed prime {k}")))?;
                let s = s.as_u64().ok_or_else(|| QError::Ingest(format!("seed for {p}")))?;
                seeds.insert(p, s);
            }
        }
        let f = NewformData { label, level, weight, nebentypus: neb, field_poly: poly, an, seed_root_mod_p: seeds };
        f.validate()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        let an: Vec<Value> = self
            .an
            .iter()
            .map(|a| match a.to_rational() {
                Some(q) if q.is_integer() => json!(q.to_integer().to_string().parse::<i64>().unwrap()),
                Some(q) => json!(q.to_string()),
                None => Value::Array(a.coeffs().iter().map(|c| json!(c.to_string())).collect()),
            })
            .collect();
        let seeds: serde_json::Map<String, Value> =
            self.seed_root_mod_p.iter().map(|(p, s)| (p.to_string(), json!(s))).collect();
        let poly: Vec<Value> = self.field_poly.iter().map(|c| json!(c.to_string().parse::<i64>().unwrap())).collect();
        serde_json::to_string(&json!({
            "label": self.label,
            "level": self.level,
            "weight": self.weight,
            "nebentypus": self.nebentypus.descriptor(),
            "field_poly": poly,
            "an": an,
            "seed_root_mod_p": seeds,
        }))
        .unwrap()
    }

    pub fn n_max(&self) -> usize {
        self.an.len()
    }

    pub fn a(&self, n: usize) -> &NfElem {
        &self.an[n - 1]
    }

    pub fn degree(&self) -> usize {
        self.field_poly.len() - 1
    }

    /// Normalization, multiplicativity and the prime-power Hecke recursion through `n_max`.
    pub fn validate(&self) -> Result<(), QError> {
        if self.level % self.nebentypus.modulus() != 0 {
            return Err(QError::Ingest("nebentypus modulus does not divide the level".into()));
        }
        if self.an.is_empty() || !self.an[0].same(&NfElem::one_elem()) {
            return Err(QError::Ingest("a(1) must be 1".into()));
        }
        let n_max = self.n_max();
        for n in 2..=n_max {
            let fac = factor(n as u64);
            if fac.len() == 1 {
                let (l, e) = fac[0];
                if e >= 2 {
                    let lk = (l.pow(e - 1)) as usize;
                    let mut expect = self.a(l as usize).times(self.a(lk));
                    if self.level % l != 0 {
                        let eta = NfElem::from_cyclotomic(&self.nebentypus.eval(l as i64))?;
                        let lw = NfElem::from_rational(&Rational::from_integer(BigInt::from(l).pow(self.weight - 1)));
                        expect = expect.minus(&eta.times(&lw).times(self.a(lk / l as usize)));
                    }
                    if !expect.same(self.a(n)) {
                        return Err(QError::Ingest(format!("{}: Hecke recursion fails at {n}", self.label)));
                    }
                }
            } else {
                let expect = fac
                    .iter()
                    .fold(NfElem::one_elem(), |acc, &(l, e)| acc.times(self.a(l.pow(e) as usize)));
                if !expect.same(self.a(n)) {
                    return Err(QError::Ingest(format!("{}: multiplicativity fails at {n}", self.label)));
                }
            }
        }
        Ok(())
    }

    /// `Σ a(n) q^n` with `a(0) = 0`.
    pub fn to_qexpansion(&self) -> QExpansion<NfElem> {
        let mut coeffs = vec![NfElem::zero_elem()];
        coeffs.extend(self.an.iter().cloned());
        QExpansion::new(self.weight, self.level, self.nebentypus.clone(), coeffs).expect("validated metadata")
    }

    /// The expansion over `Q`, when the Hecke field is `Q`.
    pub fn to_rational_qexpansion(&self) -> Result<QExpansion<Rational>, QError> {
        self.to_qexpansion()
            .try_map(|a| a.to_rational().ok_or_else(|| QError::Ring("coefficient not rational".into())))
    }

    /// The embedding of the Hecke field into `Q_p` fixed by the stored seed.
    pub fn embedding(&self, p: u64, prec: u32) -> Result<Option<PadicEmbedding>, QError> {
        if self.degree() == 1 {
            return Ok(None);
        }
        let seed = *self
            .seed_root_mod_p
            .get(&p)
            .ok_or_else(|| QError::Ingest(format!("{}: no seed root mod {p}", self.label)))?;
        Ok(Some(PadicEmbedding::polynomial(&self.field_poly, seed, p, prec)?))
    }

    /// `a(n)` under the fixed embedding.
    pub fn a_padic(&self, n: usize, p: u64, prec: u32, emb: Option<&PadicEmbedding>) -> Result<PadicNumber, QError> {
        let a = self.a(n);
        match (a.to_rational(), emb) {
            (Some(q), _) => Ok(PadicNumber::from_rational(&q, p, prec)),
            (None, Some(e)) => Ok(e.eval_power_basis(a.coeffs())),
            (None, None) => Err(QError::Ring("no embedding for the Hecke field".into())),
        }
    }
}

/// `f0 = f - β f(pz)` with `a(p, f0) = u`, `u` the unit root of `X² - a(p)X + η(p)p^{k-1}`.
#[derive(Debug, Clone)]
pub struct PStabilized {
    pub level: u64,
    pub unit_root: PadicNumber,
    pub beta: PadicNumber,
    /// `a(n, f0)` for `0 ≤ n ≤ n_max`.
    pub f0: Vec<PadicNumber>,
}

pub fn p_stabilize(f: &NewformData, p: u64, prec: u32) -> Result<PStabilized, QError> {
    if !is_prime(p) || p == 2 {
        return Err(QError::Arith(crate::arith::ArithError::NotPrime(p)));
    }
    if f.level % p == 0 {
        return Err(QError::PDividesLevel(p));
    }
    let emb = f.embedding(p, prec)?;
    let ap = f.a_padic(p as usize, p, prec, emb.as_ref())?;
    if !ap.is_unit() {
        return Err(QError::NotOrdinary(p));
    }
    let eta_p = f.nebentypus.eval(p as i64);
    let eta = match eta_p.to_rational() {
        Some(q) => PadicNumber::from_rational(&q, p, prec),
        None => embed_cyclotomic(&eta_p, &PadicEmbedding::teichmuller(eta_p.order(), p, prec)?)?,
    };
    let c = eta.mul(&PadicNumber::from_int(&BigInt::from(p).pow(f.weight - 1), p, prec));
    let poly = vec![c.clone(), ap.neg(), PadicNumber::from_i64(1, p, prec)];
    let u = hensel_root_padic(&poly, ap.reduce_mod_p()?, p, prec)?;
    let beta = c.div(&u)?;
    let mut f0 = vec![PadicNumber::zero(p, prec as i64)];
    for n in 1..=f.n_max() {
        let mut a = f.a_padic(n, p, prec, emb.as_ref())?;
        if n as u64 % p == 0 {
            a = a.sub(&beta.mul(&f.a_padic(n / p as usize, p, prec, emb.as_ref())?));
        }
        f0.push(a);
    }
    Ok(PStabilized { level: f.level * p, unit_root: u, beta, f0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    // 19a: y² + y = x³ + x² − 9x − 15; a(2..11) = 0, −2, −2, 3, 0, −1, 0, 1, 0, 3
    const F19: &str = r#"{"label":"19.2.a.a","level":19,"weight":2,"nebentypus":"triv1",
        "field_poly":[0,1],"an":[1,0,-2,-2,3,0,-1,0,1,0,3]}"#;

    #[test]
    fn ingest_and_validate() {
        let f = NewformData::from_json(F19).unwrap();
        assert_eq!(f.n_max(), 11);
        let back = NewformData::from_json(&f.to_json()).unwrap();
        assert!(back.a(11).same(f.a(11)));
        let bad = F19.replace("1,0,3]", "1,-6,3]");
        assert!(NewformData::from_json(&bad).is_err());
    }

    #[test]
    fn stabilize_ordinary() {
        let f = NewformData::from_json(F19).unwrap();
        let s = p_stabilize(&f, 5, 8).unwrap();
        assert_eq!(s.unit_root.reduce_mod_p().unwrap(), 3);
        assert_eq!(s.level, 95);
        for n in 1..=2usize {
            assert_eq!(s.f0[5 * n], s.unit_root.mul(&s.f0[n]));
        }
        for n in [1usize, 2, 3, 4, 6, 7] {
            assert_eq!(s.f0[n], f.a_padic(n, 5, 8, None).unwrap());
        }
        // u + β = a(5), uβ = 5
        let ap = f.a_padic(5, 5, 8, None).unwrap();
        assert!(s.unit_root.add(&s.beta).sub(&ap).is_zero());
        assert!(matches!(p_stabilize(&f, 19, 4), Err(QError::PDividesLevel(19))));
        let ss = NewformData::from_json(r#"{"label":"x","level":1,"weight":2,"an":[1,0,0]}"#).unwrap();
        assert!(matches!(p_stabilize(&ss, 3, 4), Err(QError::NotOrdinary(3))));
    }
}
