use std::fmt;

/// Families of formal Chern roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Alphabet {
    /// Roots of `E`.
    Alpha,
    /// Roots of `F` (or of a quotient bundle).
    Beta,
    /// Roots of the rank-2 bundle `S` of pencils.
    Gamma,
    /// Residue variables.
    U,
}

impl Alphabet {
    fn root_prefix(self) -> &'static str {
        match self {
            Alphabet::Alpha => "alpha",
            Alphabet::Beta => "beta",
            Alphabet::Gamma => "gamma",
            Alphabet::U => "u",
        }
    }

    fn bundle_suffix(self) -> &'static str {
        match self {
            Alphabet::Alpha => "E",
            Alphabet::Beta => "F",
            Alphabet::Gamma => "S",
            Alphabet::U => "U",
        }
    }
}

/// Numeric parameters that may stay symbolic (`g`, `k`, `ell`, ...).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    G,
    K,
    Ell,
    N,
    I,
    R,
    S,
    A,
    Beta,
    BigN,
    D,
    E,
}

impl Param {
    pub const ALL: [Param; 12] = [
        Param::G,
        Param::K,
        Param::Ell,
        Param::N,
        Param::I,
        Param::R,
        Param::S,
        Param::A,
        Param::Beta,
        Param::BigN,
        Param::D,
        Param::E,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::G => "g",
            Param::K => "k",
            Param::Ell => "ell",
            Param::N => "n",
            Param::I => "i",
            Param::R => "r",
            Param::S => "s",
            Param::A => "a",
            Param::Beta => "beta",
            Param::BigN => "N",
            Param::D => "d",
            Param::E => "e",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Param::ALL.into_iter().find(|p| p.name() == name)
    }
}

/// A polynomial variable.
///
/// The derived order is the variable order used by the graded-lex monomial
/// order: smaller variables weigh more when exponents are compared.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    /// Chern root, 1-based index.
    Root(Alphabet, u32),
    /// Elementary symmetric symbol `e_i` of an alphabet, i.e. `c_i` of the bundle.
    Chern(Alphabet, u32),
    Xi,
    Z,
    T,
    Param(Param),
    /// Free-form symbol such as `lambda` or `delta0`.
    Named(String),
}

impl Variable {
    pub fn alpha(i: u32) -> Variable {
        Variable::Root(Alphabet::Alpha, i)
    }
    pub fn beta(j: u32) -> Variable {
        Variable::Root(Alphabet::Beta, j)
    }
    pub fn gamma(s: u32) -> Variable {
        Variable::Root(Alphabet::Gamma, s)
    }
    pub fn u(j: u32) -> Variable {
        Variable::Root(Alphabet::U, j)
    }
    pub fn c_e(i: u32) -> Variable {
        Variable::Chern(Alphabet::Alpha, i)
    }
    pub fn c_f(i: u32) -> Variable {
        Variable::Chern(Alphabet::Beta, i)
    }
    pub fn named(s: &str) -> Variable {
        Variable::Named(s.to_string())
    }

    /// Inverse of `Display`.
    pub fn parse(s: &str) -> Option<Variable> {
        match s {
            "xi" => return Some(Variable::Xi),
            "z" => return Some(Variable::Z),
            "t" => return Some(Variable::T),
            _ => {}
        }
        if let Some(p) = Param::from_name(s) {
            return Some(Variable::Param(p));
        }
        for alph in [Alphabet::Alpha, Alphabet::Beta, Alphabet::Gamma, Alphabet::U] {
            if let Some(rest) = s.strip_prefix(alph.root_prefix()) {
                if let Ok(i) = rest.parse::<u32>() {
                    if i > 0 && !rest.starts_with('0') {
                        return Some(Variable::Root(alph, i));
                    }
                }
            }
            if let Some(rest) = s.strip_prefix('c') {
                if let Some(num) = rest.strip_suffix(alph.bundle_suffix()) {
                    if let Ok(i) = num.parse::<u32>() {
                        if i > 0 && !num.starts_with('0') {
                            return Some(Variable::Chern(alph, i));
                        }
                    }
                }
            }
        }
        let mut chars = s.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() && chars.all(|c| c.is_ascii_alphanumeric() || c == '_') => {
                Some(Variable::Named(s.to_string()))
            }
            _ => None,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Root(a, i) => write!(f, "{}{}", a.root_prefix(), i),
            Variable::Chern(a, i) => write!(f, "c{}{}", i, a.bundle_suffix()),
            Variable::Xi => f.write_str("xi"),
            Variable::Z => f.write_str("z"),
            Variable::T => f.write_str("t"),
            Variable::Param(p) => f.write_str(p.name()),
            Variable::Named(s) => f.write_str(s),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parse_round_trip() {
        let vars = [
            Variable::alpha(3),
            Variable::beta(12),
            Variable::gamma(2),
            Variable::u(1),
            Variable::c_e(1),
            Variable::c_f(2),
            Variable::Chern(Alphabet::Gamma, 1),
            Variable::Xi,
            Variable::Z,
            Variable::Param(Param::Ell),
            Variable::Param(Param::Beta),
            Variable::Param(Param::BigN),
            Variable::named("lambda"),
            Variable::named("delta0"),
        ];
        for v in vars {
            assert_eq!(Variable::parse(&v.to_string()), Some(v.clone()), "{v}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert_eq!(Variable::parse("3x"), None);
        assert_eq!(Variable::parse(""), None);
        assert_eq!(Variable::parse("alpha0"), Some(Variable::named("alpha0")));
    }
}
