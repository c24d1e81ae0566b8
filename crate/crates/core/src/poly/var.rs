use std::fmt;

/// Number of monomial slots: the 15 generators, the deformation root `u`, and one auxiliary variable.
pub const NVARS: usize = 17;

/// Number of character-variety generators.
pub const NGENS: usize = 15;

/// Names of the generators in slot order.
pub const GEN_NAMES: [&str; NGENS] = [
    "O1", "O2", "O3", "O4", "O5", "O6", "O12", "O23", "O34", "O45", "O56", "O61", "O123", "O234", "O345",
];

/// A variable slot: one of the 15 generators, `u` (with `u¹² = t`), or the internal auxiliary `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u8);

impl Var {
    pub const U: Var = Var(15);
    /// Fresh variable used for Rabinowitsch and saturation arguments.
    pub const AUX: Var = Var(16);

    /// The `k`-th generator in slot order (0-based).
    pub const fn gen(k: usize) -> Var {
        assert!(k < NGENS);
        Var(k as u8)
    }

    pub fn from_index(k: usize) -> Option<Var> {
        (k < NVARS).then_some(Var(k as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_generator(self) -> bool {
        self.index() < NGENS
    }

    /// Looks up a generator or `u` by its printed name.
    pub fn from_name(name: &str) -> Option<Var> {
        if name == "u" {
            return Some(Var::U);
        }
        GEN_NAMES.iter().position(|n| *n == name).map(Var::gen)
    }

    pub fn name(self) -> &'static str {
        match self.index() {
            k if k < NGENS => GEN_NAMES[k],
            15 => "u",
            _ => "y",
        }
    }

    /// All 15 generators in slot order.
    pub fn generators() -> impl Iterator<Item = Var> {
        (0..NGENS).map(Var::gen)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
