use std::fmt;
use std::str::FromStr;

use super::table::{named, Property, TruthTable};
use crate::error::Error;

/// The clones of Post's lattice that carry a name in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CloneName {
    BF,
    R0,
    R1,
    R2,
    M,
    M0,
    M1,
    M2,
    S1,
    S11,
    D,
    D1,
    D2,
    L,
    L0,
    L1,
    L2,
    L3,
    E,
    E0,
    E1,
    V,
    V0,
    V1,
    N,
    N2,
    I,
    I0,
    I1,
    I2,
}

use CloneName::*;

/// Every named clone, each listed after all of its named subclones.
pub const ALL_CLONES: [CloneName; 30] = [
    I2, I0, I1, I, N2, N, E0, E1, E, V0, V1, V, L2, L0, L1, L3, L, S11, S1, D2, D1, D, M2, M0,
    M1, M, R2, R0, R1, BF,
];

/// The clones that head the overview table, each with a standard base.
pub const REFERENCE_CLONES: [CloneName; 18] = [
    BF, R0, R1, M, S1, S11, D, L, L0, L3, E0, E, V0, V, N2, N, I0, I,
];

fn is_conjunction(f: &TruthTable) -> bool {
    let ones: Vec<usize> = (0..f.rows()).filter(|&i| f.get(i)).collect();
    let Some(m) = ones.iter().copied().reduce(|a, b| a & b) else {
        return true;
    };
    (0..f.rows()).all(|i| f.get(i) == (i & m == m))
}

fn is_disjunction(f: &TruthTable) -> bool {
    let zeros: Vec<usize> = (0..f.rows()).filter(|&i| !f.get(i)).collect();
    let Some(m) = zeros.iter().copied().reduce(|a, b| a | b) else {
        return true;
    };
    (0..f.rows()).all(|i| f.get(i) != (i | m == m))
}

impl CloneName {
    pub fn name(self) -> &'static str {
        match self {
            BF => "BF",
            R0 => "R0",
            R1 => "R1",
            R2 => "R2",
            M => "M",
            M0 => "M0",
            M1 => "M1",
            M2 => "M2",
            S1 => "S1",
            S11 => "S11",
            D => "D",
            D1 => "D1",
            D2 => "D2",
            L => "L",
            L0 => "L0",
            L1 => "L1",
            L2 => "L2",
            L3 => "L3",
            E => "E",
            E0 => "E0",
            E1 => "E1",
            V => "V",
            V0 => "V0",
            V1 => "V1",
            N => "N",
            N2 => "N2",
            I => "I",
            I0 => "I0",
            I1 => "I1",
            I2 => "I2",
        }
    }

    /// Membership predicate for functions of any arity (constants are lifted first).
    pub fn contains(self, f: &TruthTable) -> bool {
        let f = f.lifted();
        let p = |q| f.check_property(q);
        let r0 = || p(Property::ZeroReproducing);
        let r1 = || p(Property::OneReproducing);
        let mono = || p(Property::Monotone);
        let sd = || p(Property::SelfDual);
        let aff = || p(Property::Affine);
        let unary = || f.essential_arity() <= 1;
        match self {
            BF => true,
            R0 => r0(),
            R1 => r1(),
            R2 => r0() && r1(),
            M => mono(),
            M0 => mono() && r0(),
            M1 => mono() && r1(),
            M2 => mono() && r0() && r1(),
            S1 => p(Property::OneSeparating),
            S11 => p(Property::OneSeparating) && mono(),
            D => sd(),
            D1 => sd() && r0() && r1(),
            D2 => sd() && mono(),
            L => aff(),
            L0 => aff() && r0(),
            L1 => aff() && r1(),
            L2 => aff() && r0() && r1(),
            L3 => aff() && sd(),
            E => is_conjunction(&f),
            E0 => is_conjunction(&f) && r0(),
            E1 => is_conjunction(&f) && r1(),
            V => is_disjunction(&f),
            V0 => is_disjunction(&f) && r0(),
            V1 => is_disjunction(&f) && r1(),
            N => unary(),
            N2 => unary() && sd(),
            I => unary() && mono(),
            I0 => unary() && mono() && r0(),
            I1 => unary() && mono() && r1(),
            I2 => unary() && mono() && r0() && r1(),
        }
    }

    /// A standard generating set.
    pub fn base(self) -> Vec<TruthTable> {
        use named::*;
        match self {
            BF => vec![and(), not()],
            R0 => vec![and(), xor()],
            R1 => vec![or(), equiv()],
            R2 => vec![or(), and_equiv()],
            M => vec![and(), or(), bot(), top()],
            M0 => vec![and(), or(), bot()],
            M1 => vec![and(), or(), top()],
            M2 => vec![and(), or()],
            S1 => vec![and_not()],
            S11 => vec![and_or(), bot()],
            D => vec![sd()],
            D1 => vec![maj_neg()],
            D2 => vec![maj()],
            L => vec![xor(), top()],
            L0 => vec![xor()],
            L1 => vec![equiv()],
            L2 => vec![xor3()],
            L3 => vec![xnor3()],
            E => vec![and(), bot(), top()],
            E0 => vec![and(), bot()],
            E1 => vec![and(), top()],
            V => vec![or(), bot(), top()],
            V0 => vec![or(), bot()],
            V1 => vec![or(), top()],
            N => vec![not(), top()],
            N2 => vec![not()],
            I => vec![bot(), top()],
            I0 => vec![bot()],
            I1 => vec![top()],
            I2 => vec![id()],
        }
    }

    /// The clone of dual functions, when it is named.
    pub fn dual(self) -> Option<CloneName> {
        Some(match self {
            R0 => R1,
            R1 => R0,
            M0 => M1,
            M1 => M0,
            L0 => L1,
            L1 => L0,
            E => V,
            V => E,
            E0 => V1,
            V1 => E0,
            E1 => V0,
            V0 => E1,
            I0 => I1,
            I1 => I0,
            S1 | S11 => return None,
            other => other,
        })
    }

    /// Inclusion between named clones.
    pub fn is_subclone_of(self, other: CloneName) -> bool {
        self.base().iter().all(|f| other.contains(f))
    }
}

impl fmt::Display for CloneName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CloneName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ALL_CLONES
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Argument(format!("unknown clone `{s}`")))
    }
}
