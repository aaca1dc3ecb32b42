//! Plain-text cache of relation quotients and Hecke matrices, one file per level.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::Zero;

use super::linalg::{QMatrix, SparseRow};
use super::p1::P1List;
use super::space::ModularSymbolSpace;
use super::ModSymError;
use crate::arith::{parse_rational, Rational};

pub const CACHE_VERSION: u32 = 1;

pub fn cache_path(dir: &Path, n: u64) -> PathBuf {
    dir.join(format!("modsym-N{n}-v{CACHE_VERSION}.txt"))
}

/// Serializes the quotient and every Hecke matrix computed so far.
pub fn to_text(space: &ModularSymbolSpace) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "iwr-modsym {CACHE_VERSION}");
    let _ = writeln!(s, "level {}", space.level());
    let _ = writeln!(s, "gens {}", space.generators().len());
    let free: Vec<String> = space.quotient_basis().iter().map(|x| x.to_string()).collect();
    let _ = writeln!(s, "free {}", free.join(" "));
    for (i, row) in space.m2b.iter().enumerate() {
        let parts: Vec<String> = row.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let _ = writeln!(s, "m {i} {}", parts.join(" "));
    }
    for (l, m) in space.cached_hecke() {
        let _ = writeln!(s, "hecke {l}");
        for i in 0..m.rows {
            for j in 0..m.cols {
                if !m.get(i, j).is_zero() {
                    let _ = writeln!(s, "e {i} {j} {}", m.get(i, j));
                }
            }
        }
    }
    s
}

fn bad(msg: impl Into<String>) -> ModSymError {
    ModSymError::Cache(msg.into())
}

pub fn from_text(text: &str) -> Result<ModularSymbolSpace, ModSymError> {
    let mut lines = text.lines();
    let mut field = |key: &str| -> Result<String, ModSymError> {
        let l = lines.next().ok_or_else(|| bad("truncated header"))?;
        l.strip_prefix(key).map(|x| x.trim().to_string()).ok_or_else(|| bad(format!("expected {key}")))
    };
    let version: u32 = field("iwr-modsym")?.parse().map_err(|_| bad("version"))?;
    if version != CACHE_VERSION {
        return Err(bad(format!("format version {version}")));
    }
    let n: u64 = field("level")?.parse().map_err(|_| bad("level"))?;
    let gens: usize = field("gens")?.parse().map_err(|_| bad("gens"))?;
    let free: Vec<usize> = field("free")?
        .split_whitespace()
        .map(|x| x.parse().map_err(|_| bad("free index")))
        .collect::<Result<_, _>>()?;
    let p1 = P1List::new(n);
    if p1.len() != gens {
        return Err(bad("generator count disagrees with level"));
    }
    let mut m2b = vec![SparseRow::new(); gens];
    let mut hecke: Vec<(u64, QMatrix)> = Vec::new();
    let dim = free.len();
    for l in lines {
        let mut it = l.split_whitespace();
        match it.next() {
            Some("m") => {
                let i: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("m index"))?;
                if i >= gens {
                    return Err(bad("m index out of range"));
                }
                for part in it {
                    let (k, v) = part.split_once(':').ok_or_else(|| bad("m entry"))?;
                    let k: usize = k.parse().map_err(|_| bad("m column"))?;
                    if k >= dim {
                        return Err(bad("m column out of range"));
                    }
                    m2b[i].insert(k, parse_rational(v).ok_or_else(|| bad("m value"))?);
                }
            }
            Some("hecke") => {
                let l: u64 = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("hecke prime"))?;
                hecke.push((l, QMatrix::zeros(dim, dim)));
            }
            Some("e") => {
                let m = &mut hecke.last_mut().ok_or_else(|| bad("entry before hecke"))?.1;
                let i: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("e row"))?;
                let j: usize = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| bad("e col"))?;
                let v: Rational = it.next().and_then(parse_rational).ok_or_else(|| bad("e value"))?;
                if i >= dim || j >= dim {
                    return Err(bad("e index out of range"));
                }
                m.set(i, j, v);
            }
            Some(other) => return Err(bad(format!("unknown record {other}"))),
            None => {}
        }
    }
    let space = ModularSymbolSpace::from_parts(p1, free, m2b);
    for (l, m) in hecke {
        space.insert_hecke(l, m);
    }
    Ok(space)
}

/// Loads level `n` from `dir` when present, else builds and writes it.
pub fn load_or_build(n: u64, dir: Option<&Path>) -> Result<ModularSymbolSpace, ModSymError> {
    let Some(dir) = dir else { return ModularSymbolSpace::build(n) };
    let path = cache_path(dir, n);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(s) = from_text(&text) {
            if s.level() == n {
                return Ok(s);
            }
        }
    }
    let s = ModularSymbolSpace::build(n)?;
    save(&s, dir)?;
    Ok(s)
}

pub fn save(space: &ModularSymbolSpace, dir: &Path) -> Result<(), ModSymError> {
    fs::create_dir_all(dir).map_err(|e| bad(e.to_string()))?;
    fs::write(cache_path(dir, space.level()), to_text(space)).map_err(|e| bad(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let s = ModularSymbolSpace::build(37).unwrap();
        let t2 = s.hecke_operator(2).unwrap();
        let back = from_text(&to_text(&s)).unwrap();
        assert_eq!(back.dimension(), s.dimension());
        assert_eq!(back.quotient_basis(), s.quotient_basis());
        assert_eq!(*back.hecke_operator(2).unwrap(), *t2);
        assert_eq!(*back.hecke_operator(3).unwrap(), *s.hecke_operator(3).unwrap());
        assert!(from_text("iwr-modsym 99\n").is_err());
    }
}
