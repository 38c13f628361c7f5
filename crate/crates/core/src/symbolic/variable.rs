use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Which of the two tangent directions a fiber-product jet coordinate lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    S,
    T,
}

impl Branch {
    pub fn letter(self) -> char {
        match self {
            Branch::S => 's',
            Branch::T => 't',
        }
    }
}

/// Superscript carried by a coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// An ambient coordinate `x`.
    Plain,
    /// A jet coordinate `x^(n)`, the coefficient of `t^n`.
    Jet(u32),
    /// A jet coordinate of one copy of `J_1` inside the fiber product `J_1 x_X J_1`.
    FiberJet(u32, Branch),
    /// A wedge coordinate `x^(i,j)`, the coefficient of `s^i t^j`.
    Wedge(u32, u32),
}

impl VarKind {
    fn rank(&self) -> u8 {
        match self {
            VarKind::Plain => 0,
            VarKind::Jet(_) => 1,
            VarKind::FiberJet(..) => 2,
            VarKind::Wedge(..) => 3,
        }
    }
}

impl Ord for VarKind {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (VarKind::Jet(a), VarKind::Jet(b)) => a.cmp(b),
            (VarKind::FiberJet(a, x), VarKind::FiberJet(b, y)) => a.cmp(b).then(x.cmp(y)),
            // graded lex on the superscript pair
            (VarKind::Wedge(i, j), VarKind::Wedge(k, l)) => {
                (i + j).cmp(&(k + l)).then(i.cmp(k)).then(j.cmp(l))
            }
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for VarKind {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A named coordinate, optionally decorated with a jet or wedge superscript.
///
/// Variables are totally ordered: by base name, then by kind
/// (plain < jet < fiber jet < wedge), then by superscript.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    base: Arc<str>,
    kind: VarKind,
}

impl Variable {
    pub fn new(base: impl Into<Arc<str>>, kind: VarKind) -> Self {
        Variable {
            base: base.into(),
            kind,
        }
    }

    pub fn plain(base: impl Into<Arc<str>>) -> Self {
        Self::new(base, VarKind::Plain)
    }

    pub fn jet(base: impl Into<Arc<str>>, order: u32) -> Self {
        Self::new(base, VarKind::Jet(order))
    }

    pub fn wedge(base: impl Into<Arc<str>>, i: u32, j: u32) -> Self {
        Self::new(base, VarKind::Wedge(i, j))
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    /// The same base with a different superscript.
    pub fn with_kind(&self, kind: VarKind) -> Self {
        Variable {
            base: Arc::clone(&self.base),
            kind,
        }
    }

    /// `(i, j)` for a wedge coordinate.
    pub fn wedge_index(&self) -> Option<(u32, u32)> {
        match self.kind {
            VarKind::Wedge(i, j) => Some((i, j)),
            _ => None,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Plain => write!(f, "{}", self.base),
            VarKind::Jet(n) => write!(f, "{}_({})", self.base, n),
            VarKind::FiberJet(n, b) => write!(f, "{}_({},{})", self.base, n, b.letter()),
            VarKind::Wedge(i, j) => write!(f, "{}_({},{})", self.base, i, j),
        }
    }
}

/// All wedge coordinates `base^(i,j)` with `i + j <= m`, in variable order.
pub fn wedge_coordinates(base: &Variable, m: u32) -> Vec<Variable> {
    let mut out = Vec::with_capacity(((m + 1) * (m + 2) / 2) as usize);
    for d in 0..=m {
        for i in 0..=d {
            out.push(base.with_kind(VarKind::Wedge(i, d - i)));
        }
    }
    out
}
