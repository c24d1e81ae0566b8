use super::McgError;
use crate::poly::{parse_rational_poly, ParamMode, PolyError, SubstLimits, SubstitutionMap, TermOrder, Var};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// One letter of a mapping-class word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// Dehn twist `d_k`, `k ∈ 1..=5`.
    D(u8),
    /// Inverse Dehn twist `d_k⁻¹`.
    DInv(u8),
    /// The order-six rotation (same action as `ζ1`).
    I,
    IInv,
    /// Composite twist `ζ_k`, `k ∈ 0..=4`.
    Zeta(u8),
}

impl Atom {
    pub fn inverse(self) -> Option<Atom> {
        match self {
            Atom::D(k) => Some(Atom::DInv(k)),
            Atom::DInv(k) => Some(Atom::D(k)),
            Atom::I => Some(Atom::IInv),
            Atom::IInv => Some(Atom::I),
            Atom::Zeta(0) => Some(Atom::Zeta(0)),
            Atom::Zeta(_) => None,
        }
    }
}

impl FromStr for Atom {
    type Err = McgError;

    fn from_str(s: &str) -> Result<Self, McgError> {
        let bad = || McgError::UnknownAtom(s.to_string());
        let s = s.trim();
        match s {
            "I" => return Ok(Atom::I),
            "Ii" => return Ok(Atom::IInv),
            _ => {}
        }
        let digit = |t: &str| t.parse::<u8>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix('d') {
            let (num, inv) = match rest.strip_suffix('i') {
                Some(n) => (n, true),
                None => (rest, false),
            };
            let k = digit(num)?;
            if !(1..=5).contains(&k) {
                return Err(bad());
            }
            return Ok(if inv { Atom::DInv(k) } else { Atom::D(k) });
        }
        if let Some(rest) = s.strip_prefix('z') {
            let k = digit(rest)?;
            if k > 4 {
                return Err(bad());
            }
            return Ok(Atom::Zeta(k));
        }
        Err(bad())
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::D(k) => write!(f, "d{k}"),
            Atom::DInv(k) => write!(f, "d{k}i"),
            Atom::I => f.write_str("I"),
            Atom::IInv => f.write_str("Ii"),
            Atom::Zeta(k) => write!(f, "z{k}"),
        }
    }
}

/// A word in the atoms, applied left to right (the first atom acts first).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TwistWord {
    pub atoms: Vec<Atom>,
}

impl TwistWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(atoms: Vec<Atom>) -> Self {
        Self { atoms }
    }

    pub fn is_identity(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Rewrites every `d_k` as `I^{k−1} d_1 I^{1−k}` (and likewise for inverses).
    pub fn expand(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        for a in &self.atoms {
            match *a {
                Atom::D(k) | Atom::DInv(k) if k > 1 => {
                    let core = if matches!(a, Atom::D(_)) {
                        Atom::D(1)
                    } else {
                        Atom::DInv(1)
                    };
                    out.extend(std::iter::repeat_n(Atom::I, (k - 1) as usize));
                    out.push(core);
                    out.extend(std::iter::repeat_n(Atom::IInv, (k - 1) as usize));
                }
                Atom::Zeta(1) => out.push(Atom::I),
                Atom::Zeta(0) => {}
                other => out.push(other),
            }
        }
        out
    }
}

impl FromStr for TwistWord {
    type Err = McgError;

    /// Comma- or whitespace-separated atoms; `id` (or an empty string) is the identity word.
    fn from_str(s: &str) -> Result<Self, McgError> {
        let parts: Vec<&str> = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        if parts.is_empty() || parts == ["id"] {
            return Ok(Self::identity());
        }
        parts
            .iter()
            .map(|p| p.parse())
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self.atoms.iter().map(Atom::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

const D1: &[(&str, &str)] = &[
    ("O2", "O1*O2 - O12"),
    ("O6", "O61"),
    ("O12", "O2"),
    ("O23", "O1*O23 - O123"),
    ("O56", "O234"),
    ("O61", "O1*O61 - O6"),
    ("O123", "O23"),
    ("O234", "O1*O234 - O56"),
];

const D1_INV: &[(&str, &str)] = &[
    ("O2", "O12"),
    ("O6", "O1*O6 - O61"),
    ("O12", "O1*O12 - O2"),
    ("O23", "O123"),
    ("O56", "O1*O56 - O234"),
    ("O61", "O6"),
    ("O123", "O1*O123 - O23"),
    ("O234", "O56"),
];

const ROTATION: &[(&str, &str)] = &[
    ("O1", "O2"),
    ("O2", "O3"),
    ("O3", "O4"),
    ("O4", "O5"),
    ("O5", "O6"),
    ("O6", "O1"),
    ("O12", "O23"),
    ("O23", "O34"),
    ("O34", "O45"),
    ("O45", "O56"),
    ("O56", "O61"),
    ("O61", "O12"),
    ("O123", "O234"),
    ("O234", "O345"),
    ("O345", "O123"),
];

const ZETA2: &[(&str, &str)] = &[
    ("O1", "O2"),
    ("O2", "O1*O2 - O12"),
    ("O3", "O5*O6 - O56"),
    ("O4", "O5"),
    ("O5", "O45"),
    ("O6", "O23"),
    ("O12", "O1*(O2^2 - 1) - O2*O12"),
    ("O23", "O3*O4 - O34"),
    ("O34", "(O5^2 - 1)*O6 - O5*O56"),
    ("O45", "O4"),
    ("O56", "O23*O45 - O61"),
    ("O61", "O3"),
    ("O123", "O4*O23 - O234"),
    ("O234", "O3*O45 - O345"),
    ("O345", "1/2*(O2*O5 + O34*O61 - O234*O345)"),
];

const ZETA3: &[(&str, &str)] = &[
    ("O1", "O1*O2 - O12"),
    ("O2", "O3"),
    ("O3", "O4"),
    ("O4", "O5*O61 - O234"),
    ("O5", "O61"),
    ("O6", "-O6 + O1*O61"),
    ("O12", "O1*O23 - O123"),
    ("O23", "O34"),
    ("O34", "-O23 + O45*O61"),
    ("O45", "O5"),
    ("O56", "-O6*O61 + O1*(-1 + O61^2)"),
    ("O61", "O345"),
    ("O123", "-O56 + O1*O234"),
    ("O234", "-O2 + O61*O345"),
    ("O345", "O45"),
];

const ZETA4: &[(&str, &str)] = &[
    ("O1", "O2"),
    ("O2", "O3"),
    ("O3", "O4"),
    ("O4", "O5*O6 - O56"),
    ("O5", "O6"),
    ("O6", "O61"),
    ("O12", "O23"),
    ("O23", "O34"),
    ("O34", "O6*O45 - O123"),
    ("O45", "O5"),
    ("O56", "-O1 + O6*O61"),
    ("O61", "O345"),
    ("O123", "O234"),
    ("O234", "-O12 + O6*O345"),
    ("O345", "O45"),
];

fn build(table: &[(&str, &str)]) -> SubstitutionMap {
    let ord = TermOrder::degrevlex();
    let mut images: Vec<_> = SubstitutionMap::identity(ord).images().to_vec();
    for (name, expr) in table {
        let v = Var::from_name(name).expect("table names are generators");
        images[v.index()] = parse_rational_poly(expr, &ParamMode::Symbolic).expect("table expressions parse");
    }
    SubstitutionMap::from_images(images)
}

fn inverse_permutation(table: &[(&str, &str)]) -> Vec<(&'static str, &'static str)> {
    let leak = |s: &str| -> &'static str {
        crate::poly::GEN_NAMES
            .iter()
            .copied()
            .find(|n| *n == s)
            .expect("generator name")
    };
    table.iter().map(|(a, b)| (leak(b), leak(a))).collect()
}

struct Catalog {
    d1: SubstitutionMap,
    d1_inv: SubstitutionMap,
    rot: SubstitutionMap,
    rot_inv: SubstitutionMap,
    zeta: [SubstitutionMap; 5],
}

fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let id = SubstitutionMap::identity(TermOrder::degrevlex());
        let rot = build(ROTATION);
        Catalog {
            d1: build(D1),
            d1_inv: build(D1_INV),
            rot_inv: build(&inverse_permutation(ROTATION)),
            zeta: [id, rot.clone(), build(ZETA2), build(ZETA3), build(ZETA4)],
            rot,
        }
    })
}

/// The substitution map of one atom.
pub fn twist_map(atom: Atom) -> Result<SubstitutionMap, McgError> {
    match atom {
        Atom::D(1) => Ok(catalog().d1.clone()),
        Atom::DInv(1) => Ok(catalog().d1_inv.clone()),
        Atom::D(_) | Atom::DInv(_) => compose_word(&TwistWord::new(vec![atom]), &SubstLimits::default()),
        Atom::I => Ok(catalog().rot.clone()),
        Atom::IInv => Ok(catalog().rot_inv.clone()),
        Atom::Zeta(k) => Ok(catalog().zeta[k as usize].clone()),
    }
}

/// Map of an expanded atom (`d_k` already rewritten through `d_1`).
pub(crate) fn base_map(atom: Atom) -> &'static SubstitutionMap {
    let c = catalog();
    match atom {
        Atom::D(1) => &c.d1,
        Atom::DInv(1) => &c.d1_inv,
        Atom::I => &c.rot,
        Atom::IInv => &c.rot_inv,
        Atom::Zeta(k) => &c.zeta[k as usize],
        other => panic!("{other} is not a base atom"),
    }
}

/// Composes a word symbolically: the first atom acts first.
pub fn compose_word(w: &TwistWord, limits: &SubstLimits) -> Result<SubstitutionMap, McgError> {
    let mut acc = SubstitutionMap::identity(TermOrder::degrevlex());
    for a in w.expand() {
        acc = acc
            .then(base_map(a), limits)
            .map_err(|e: PolyError| McgError::Poly(e))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TwistWord {
        s.parse().unwrap()
    }

    fn img(m: &SubstitutionMap, name: &str) -> String {
        m.image(Var::from_name(name).unwrap()).to_string()
    }

    #[test]
    fn zeta0_is_identity() {
        assert!(twist_map(Atom::Zeta(0)).unwrap().is_identity());
    }

    #[test]
    fn d1_table() {
        let d1 = twist_map(Atom::D(1)).unwrap();
        assert_eq!(img(&d1, "O12"), "O2");
        assert_eq!(img(&d1, "O6"), "O61");
        assert_eq!(img(&d1, "O2"), "O1*O2 - O12");
    }

    #[test]
    fn zeta_tables() {
        let z2 = twist_map(Atom::Zeta(2)).unwrap();
        assert_eq!(img(&z2, "O345"), "1/2*O2*O5 + 1/2*O34*O61 - 1/2*O234*O345");
        let z1 = twist_map(Atom::Zeta(1)).unwrap();
        assert_eq!(img(&z1, "O6"), "O1");
    }

    #[test]
    fn inverse_pairs_compose_to_identity() {
        let lim = SubstLimits::default();
        assert!(compose_word(&w("d1,d1i"), &lim).unwrap().is_identity());
        for k in 1..=5 {
            assert!(compose_word(&w(&format!("d{k},d{k}i")), &lim).unwrap().is_identity());
            assert!(compose_word(&w(&format!("d{k}i,d{k}")), &lim).unwrap().is_identity());
        }
        assert!(compose_word(&w("I,I,I,I,I,I"), &lim).unwrap().is_identity());
        assert!(!compose_word(&w("I,I,I"), &lim).unwrap().is_identity());
    }

    #[test]
    fn d2_is_conjugated_d1() {
        let lim = SubstLimits::default();
        assert_eq!(
            compose_word(&w("d2"), &lim).unwrap(),
            compose_word(&w("I,d1,Ii"), &lim).unwrap()
        );
    }

    #[test]
    fn word_parsing() {
        assert_eq!(w("d1, d2i ,I Ii z3").to_string(), "d1,d2i,I,Ii,z3");
        assert!(w("id").is_identity());
        assert!("z9".parse::<TwistWord>().is_err());
        assert!("d6".parse::<TwistWord>().is_err());
        assert!("q".parse::<TwistWord>().is_err());
    }
}
