use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::PREFILTER_PRIME;
use super::p1::{lift_to_sl2z, P1List};
use super::space::ModularSymbolSpace;
use super::ModSymError;
use crate::arith::ntheory::gcd;
use crate::arith::{content, Rational};
use crate::dirichlet::DirichletCharacter;

/// Which continued-fraction expansion drives the unimodular path decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfChain {
    /// Regular expansion with floor partial quotients.
    Floor,
    /// Minus expansion `a0 - 1/(a1 - ...)` with ceiling partial quotients.
    Ceiling,
}

#[derive(Debug, Clone)]
enum Kind {
    Base {
        space: Arc<ModularSymbolSpace>,
        /// Functional on the quotient basis.
        values: Vec<Rational>,
        /// Unscaled values on every Manin generator.
        gen_values: Vec<Rational>,
    },
    Twist {
        inner: Arc<SymbolFunctional>,
        chi: DirichletCharacter,
        /// `χ̄(a)` for `a mod C`.
        table: Vec<i64>,
    },
}

/// A ± modular symbol as a functional `r ↦ value on {r, ∞}`, times a recorded scalar.
#[derive(Debug, Clone)]
pub struct SymbolFunctional {
    kind: Kind,
    sign: i8,
    level: u64,
    scale: Rational,
}

fn check_sign(sign: i8) -> Result<(), ModSymError> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(ModSymError::BadSign(sign))
    }
}

/// `(p, q)` pairs from `0/1` through `∞` and the convergents of `a/b`; consecutive pairs are unimodular.
fn cf_chain(a: &BigInt, b: &BigInt, mode: CfChain) -> Vec<(BigInt, BigInt)> {
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut out = match mode {
        CfChain::Floor => vec![(BigInt::zero(), BigInt::one()), (BigInt::one(), BigInt::zero())],
        CfChain::Ceiling => vec![(BigInt::zero(), -BigInt::one()), (BigInt::one(), BigInt::zero())],
    };
    let sgn = match mode {
        CfChain::Floor => BigInt::one(),
        CfChain::Ceiling => -BigInt::one(),
    };
    while !b.is_zero() {
        let t = match mode {
            CfChain::Floor => a.div_floor(&b),
            CfChain::Ceiling => a.div_ceil(&b),
        };
        let r = &a - &t * &b;
        // floor: a/b = t + r/b; ceiling: a/b = t - (-r)/b
        let next = if mode == CfChain::Floor { r } else { -r };
        a = std::mem::replace(&mut b, next);
        let n = out.len();
        let p = &t * &out[n - 1].0 + &sgn * &out[n - 2].0;
        let q = &t * &out[n - 1].1 + &sgn * &out[n - 2].1;
        out.push((p, q));
    }
    out
}

fn reduce_i64(x: &BigInt, n: u64) -> i64 {
    x.mod_floor(&BigInt::from(n)).to_i64().unwrap()
}

impl SymbolFunctional {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// Level of the form the functional belongs to.
    pub fn level(&self) -> u64 {
        self.level
    }

    /// The rational normalization scalar applied to the raw functional.
    pub fn scale(&self) -> &Rational {
        &self.scale
    }

    /// Functional on the quotient basis (unscaled), for untwisted symbols.
    pub fn values(&self) -> Option<&[Rational]> {
        match &self.kind {
            Kind::Base { values, .. } => Some(values),
            Kind::Twist { .. } => None,
        }
    }

    pub fn space(&self) -> Option<&Arc<ModularSymbolSpace>> {
        match &self.kind {
            Kind::Base { space, .. } => Some(space),
            Kind::Twist { inner, .. } => inner.space(),
        }
    }

    pub fn is_twist(&self) -> bool {
        matches!(self.kind, Kind::Twist { .. })
    }

    /// The same functional times `c`.
    pub fn scaled(&self, c: &Rational) -> Self {
        let mut s = self.clone();
        s.scale = &s.scale * c;
        s
    }

    fn raw_chain(&self, r: &Rational, mode: CfChain) -> Rational {
        match &self.kind {
            Kind::Base { space, gen_values, .. } => {
                let n = space.level();
                let at = |c: &BigInt, d: &BigInt| -> &Rational {
                    let i = space.p1.index_of(reduce_i64(c, n), reduce_i64(d, n)).expect("unimodular pair");
                    &gen_values[i]
                };
                let chain = cf_chain(r.numer(), r.denom(), mode);
                let mut s = Rational::zero();
                for w in chain.windows(2) {
                    let ((pp, qp), (p, q)) = (&w[0], &w[1]);
                    let e = p * qp - pp * q;
                    // [p, e·pp; q, e·qp] ∈ SL2(Z) carries {0, ∞} to {pp/qp, p/q}
                    s += at(q, &(&e * qp));
                }
                at(&BigInt::zero(), &BigInt::one()) - s
            }
            Kind::Twist { inner, table, .. } => {
                let c = table.len() as i64;
                let mut s = Rational::zero();
                for (a, &x) in table.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    let v = inner.evaluate_with(&(r + Rational::new(BigInt::from(a), BigInt::from(c))), mode);
                    if x == 1 {
                        s += v;
                    } else {
                        s -= v;
                    }
                }
                s
            }
        }
    }

    /// Value on `{r, ∞}`.
    pub fn evaluate(&self, r: &Rational) -> Rational {
        self.evaluate_with(r, CfChain::Floor)
    }

    /// Value on `{r, ∞}` through the chosen convergent chain.
    pub fn evaluate_with(&self, r: &Rational, mode: CfChain) -> Rational {
        &self.scale * self.raw_chain(r, mode)
    }

    /// Value on `{r, s}`.
    pub fn path(&self, r: &Rational, s: &Rational) -> Rational {
        self.evaluate(r) - self.evaluate(s)
    }

    /// Value on `{r, 0}`, the convention of the published tables.
    pub fn table_value(&self, r: &Rational) -> Rational {
        self.path(r, &Rational::zero())
    }

    /// Unscaled values on the Manin generators of the functional's level.
    fn raw_generator_values(&self) -> Vec<Rational> {
        match &self.kind {
            Kind::Base { gen_values, .. } => gen_values.clone(),
            Kind::Twist { .. } => {
                let n = self.level;
                let unscaled = SymbolFunctional { scale: Rational::one(), ..self.clone() };
                let at = |num: i64, den: i64| -> Rational {
                    if den == 0 {
                        Rational::zero()
                    } else {
                        unscaled.evaluate(&Rational::new(BigInt::from(num), BigInt::from(den)))
                    }
                };
                P1List::new(n)
                    .reps()
                    .iter()
                    .map(|&(c, d)| {
                        let [a, b, cc, dd] = lift_to_sl2z(c, d, n).unwrap();
                        at(b, dd) - at(a, cc)
                    })
                    .collect()
            }
        }
    }

    /// Values on the Manin generators of the functional's level, scale applied.
    pub fn generator_values(&self) -> Vec<Rational> {
        self.raw_generator_values().into_iter().map(|v| v * &self.scale).collect()
    }

    /// Rescales so the generator values are coprime integers with the first nonzero one positive.
    pub fn normalize(&self) -> Result<Self, ModSymError> {
        let raw = self.raw_generator_values();
        let c = content(&raw);
        if c.is_zero() {
            return Err(ModSymError::ZeroSymbol);
        }
        let first = raw.iter().find(|v| !v.is_zero()).unwrap();
        let scale = if first.is_negative() { -Rational::one() / c } else { Rational::one() / c };
        Ok(SymbolFunctional { scale, ..self.clone() })
    }
}

/// The unique `sign`-eigenfunctional for the Hecke eigenvalues in `target`, normalized.
pub fn eigensymbol(
    space: &Arc<ModularSymbolSpace>,
    target: &[(u64, Rational)],
    sign: i8,
) -> Result<SymbolFunctional, ModSymError> {
    check_sign(sign)?;
    let dim = space.dimension();
    if dim == 0 {
        return Err(ModSymError::EigenDim { found: 0 });
    }
    let mut a = space.star_matrix().transpose().minus_scalar(&Rational::from_integer(sign.into()));
    for (l, al) in target {
        let t = space.hecke_operator(*l)?;
        a = a.stack(&t.transpose().minus_scalar(al));
    }
    if let Some(r) = a.rank_mod(PREFILTER_PRIME) {
        // rank can only drop mod q, so a full rank there is conclusive
        if r == dim {
            return Err(ModSymError::EigenDim { found: 0 });
        }
    }
    let ns = a.nullspace();
    if ns.len() != 1 {
        return Err(ModSymError::EigenDim { found: ns.len() });
    }
    let values = ns.into_iter().next().unwrap();
    Ok(base_functional(space, values, sign).normalize()?)
}

fn base_functional(space: &Arc<ModularSymbolSpace>, values: Vec<Rational>, sign: i8) -> SymbolFunctional {
    let gen_values = (0..space.generators().len())
        .map(|k| space.generator_coords(k).iter().map(|(b, co)| co * &values[*b]).sum())
        .collect();
    SymbolFunctional {
        kind: Kind::Base { space: space.clone(), values, gen_values },
        sign,
        level: space.level(),
        scale: Rational::one(),
    }
}

/// A functional from explicit quotient-basis values, unnormalized.
pub fn functional_from_values(
    space: &Arc<ModularSymbolSpace>,
    values: Vec<Rational>,
    sign: i8,
) -> Result<SymbolFunctional, ModSymError> {
    check_sign(sign)?;
    if values.len() != space.dimension() {
        return Err(ModSymError::Dimension { got: values.len(), expected: space.dimension() });
    }
    let st = space.star_matrix().transpose();
    let img = st.mul_vec(&values);
    let want: Vec<Rational> = values.iter().map(|v| v * Rational::from_integer(sign.into())).collect();
    if img != want {
        return Err(ModSymError::BadSign(sign));
    }
    Ok(base_functional(space, values, sign))
}

/// Birch's twisting sum `r ↦ Σ_{a mod C} χ̄(a)·sym(r + a/C)` without renormalization.
///
/// The result has sign `sym.sign()·χ(-1)` and level `N·C²`. Only characters of order at most 2.
/// The conductor need only be prime to the level of the untwisted space, so repeated twists are allowed.
pub fn twist_symbol_unnormalized(
    sym: &Arc<SymbolFunctional>,
    chi: &DirichletCharacter,
) -> Result<SymbolFunctional, ModSymError> {
    if chi.order() > 2 {
        return Err(ModSymError::CharOrder(chi.order()));
    }
    let chi = chi.primitive();
    let c = chi.modulus();
    if c == 1 {
        return Ok(sym.as_ref().clone());
    }
    let base = sym.space().map_or(sym.level(), |s| s.level());
    if gcd(c, base) != 1 {
        return Err(ModSymError::NotCoprime { conductor: c, level: base });
    }
    let table = (0..c as i64)
        .map(|a| match chi.exponent(a) {
            None => 0,
            Some(0) => 1,
            Some(_) => -1,
        })
        .collect();
    Ok(SymbolFunctional {
        kind: Kind::Twist { inner: sym.clone(), chi: chi.clone(), table },
        sign: sym.sign() * chi.parity() as i8,
        level: sym.level() * c * c,
        scale: Rational::one(),
    })
}

/// The symbol of `f⊗χ`, normalized on the Manin generators of level `N·C²`.
pub fn twist_symbol(sym: &Arc<SymbolFunctional>, chi: &DirichletCharacter) -> Result<SymbolFunctional, ModSymError> {
    let c = chi.conductor();
    if c > 1 && gcd(c, sym.level()) != 1 {
        return Err(ModSymError::NotCoprime { conductor: c, level: sym.level() });
    }
    let t = twist_symbol_unnormalized(sym, chi)?;
    if !t.is_twist() {
        return Ok(t);
    }
    t.normalize()
}

impl SymbolFunctional {
    /// Twisting character, if any.
    pub fn character(&self) -> Option<&DirichletCharacter> {
        match &self.kind {
            Kind::Twist { chi, .. } => Some(chi),
            Kind::Base { .. } => None,
        }
    }

    /// `T_ℓ` applied through the functional: `Σ_{b mod ℓ} x((r+b)/ℓ) + x(ℓr)` for `ℓ ∤ N`.
    pub fn hecke_image(&self, l: u64, r: &Rational) -> Rational {
        let lr = Rational::from_integer(BigInt::from(l));
        let mut s = self.evaluate(&(r * &lr));
        for b in 0..l {
            s += self.evaluate(&((r + Rational::from_integer(BigInt::from(b))) / &lr));
        }
        s
    }
}
