use crate::poly::Var;
use std::fmt;

/// Generator shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Single,
    Pair,
    Triple,
}

/// Canonical generator index: residue mod 6 (mod 3 for triples), 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorIndex {
    pub kind: GenKind,
    pub base: u8,
}

/// Normalizes a 1-based starting index, e.g. pair 6 is `O61` and triple 4 is `O123`.
pub fn index_normalize(kind: GenKind, start: i64) -> GeneratorIndex {
    let modulus = if kind == GenKind::Triple { 3 } else { 6 };
    GeneratorIndex {
        kind,
        base: (start - 1).rem_euclid(modulus) as u8,
    }
}

impl GeneratorIndex {
    pub fn var(self) -> Var {
        let offset = match self.kind {
            GenKind::Single => 0,
            GenKind::Pair => 6,
            GenKind::Triple => 12,
        };
        Var::gen(offset + self.base as usize)
    }

    /// Inverse of [`var`](Self::var) for generator slots.
    pub fn of_var(v: Var) -> Option<Self> {
        let k = v.index();
        let (kind, base) = match k {
            0..=5 => (GenKind::Single, k),
            6..=11 => (GenKind::Pair, k - 6),
            12..=14 => (GenKind::Triple, k - 12),
            _ => return None,
        };
        Some(Self { kind, base: base as u8 })
    }

    /// Index shifted by `k` positions around the hexagon.
    pub fn shifted(self, k: i64) -> Self {
        index_normalize(self.kind, self.base as i64 + 1 + k)
    }
}

impl fmt::Display for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.var().name())
    }
}

/// `O_i`.
pub fn single(i: i64) -> Var {
    index_normalize(GenKind::Single, i).var()
}

/// `O_{i,i+1}`.
pub fn pair(i: i64) -> Var {
    index_normalize(GenKind::Pair, i).var()
}

/// `O_{i,i+1,i+2}`.
pub fn triple(i: i64) -> Var {
    index_normalize(GenKind::Triple, i).var()
}
