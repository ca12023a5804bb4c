use std::fmt;

/// What an abstract symbol stands for.
///
/// `C`, `D` and `E` are graded Chern-type classes `c(i)_r`, `d(i)_r`,
/// `e(i)_r`. `Root` is a degree-one variable from a named family (Chern
/// roots, the `T_i` of rational identities, fresh parameters). `Z` is the
/// first Chern class of the line bundle in which a twisted form takes values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    C,
    D,
    E,
    Root(char),
    Z,
}

/// An indexed symbol. The derived ordering on `(kind, label, degree)` is the
/// ordering used for canonical monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    pub label: u32,
    pub degree: u32,
}

impl Symbol {
    pub fn c(label: u32, degree: u32) -> Self {
        Symbol { kind: SymbolKind::C, label, degree }
    }

    pub fn d(label: u32, degree: u32) -> Self {
        Symbol { kind: SymbolKind::D, label, degree }
    }

    pub fn e(label: u32, degree: u32) -> Self {
        Symbol { kind: SymbolKind::E, label, degree }
    }

    pub fn root(family: char, index: u32) -> Self {
        Symbol { kind: SymbolKind::Root(family), label: index, degree: 1 }
    }

    pub fn z() -> Self {
        Symbol { kind: SymbolKind::Z, label: 0, degree: 1 }
    }

    /// Chern-type symbols (`c`, `d`, `e`) carry a subscript; the rest are
    /// plain variables.
    pub fn is_chern(&self) -> bool {
        matches!(self.kind, SymbolKind::C | SymbolKind::D | SymbolKind::E)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SymbolKind::C => write!(f, "c({})_{}", self.label, self.degree),
            SymbolKind::D => write!(f, "d({})_{}", self.label, self.degree),
            SymbolKind::E => write!(f, "e({})_{}", self.label, self.degree),
            SymbolKind::Root(fam) => write!(f, "{}{}", fam, self.label),
            SymbolKind::Z => write!(f, "z"),
        }
    }
}
