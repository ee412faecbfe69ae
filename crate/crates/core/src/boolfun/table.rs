use std::fmt;

use crate::error::{Error, Result};

/// Largest arity accepted for declared operators.
pub const ARITY_CAP: usize = 6;

/// Largest arity for which closures are enumerated.
pub const CLOSURE_ARITY_CAP: usize = 4;

/// A Boolean function of fixed arity.
///
/// Bit `i` of `bits` is the value on the argument tuple whose binary encoding is `i`,
/// with the first argument as the most significant bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    arity: u8,
    bits: u64,
}

/// The properties that define the maximal clones of Post's lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    ZeroReproducing,
    OneReproducing,
    Monotone,
    SelfDual,
    Affine,
    OneSeparating,
    ZeroSeparating,
}

fn row_mask(arity: usize) -> u64 {
    let rows = 1u32 << arity;
    if rows == 64 {
        u64::MAX
    } else {
        (1u64 << rows) - 1
    }
}

impl TruthTable {
    pub fn new(arity: usize, bits: u64) -> Result<Self> {
        if arity > ARITY_CAP {
            return Err(Error::Limit(format!("arity {arity} exceeds cap {ARITY_CAP}")));
        }
        if bits & !row_mask(arity) != 0 {
            return Err(Error::Argument(format!("bits {bits:#x} do not fit arity {arity}")));
        }
        Ok(TruthTable { arity: arity as u8, bits })
    }

    /// Builds a table by evaluating `f` on every row. Panics above [`ARITY_CAP`].
    pub fn from_fn(arity: usize, f: impl Fn(&[bool]) -> bool) -> Self {
        assert!(arity <= ARITY_CAP, "arity {arity} exceeds cap");
        let mut bits = 0u64;
        let mut args = vec![false; arity];
        for idx in 0..(1usize << arity) {
            for (j, a) in args.iter_mut().enumerate() {
                *a = (idx >> (arity - 1 - j)) & 1 == 1;
            }
            if f(&args) {
                bits |= 1 << idx;
            }
        }
        TruthTable { arity: arity as u8, bits }
    }

    /// Parses a `0`/`1` string of length `2^arity`.
    pub fn from_bitstring(arity: usize, s: &str) -> Result<Self> {
        if arity > ARITY_CAP {
            return Err(Error::Limit(format!("arity {arity} exceeds cap {ARITY_CAP}")));
        }
        let rows = 1usize << arity;
        if s.len() != rows {
            return Err(Error::Argument(format!(
                "bitstring `{s}` has length {}, expected {rows}",
                s.len()
            )));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Argument(format!("bad bit `{c}` in `{s}`"))),
            }
        }
        Ok(TruthTable { arity: arity as u8, bits })
    }

    pub fn bitstring(&self) -> String {
        (0..self.rows())
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        TruthTable {
            arity: arity as u8,
            bits: if value { row_mask(arity) } else { 0 },
        }
    }

    pub fn projection(arity: usize, var: usize) -> Self {
        assert!(var < arity);
        TruthTable::from_fn(arity, |a| a[var])
    }

    pub fn arity(&self) -> usize {
        self.arity as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn rows(&self) -> usize {
        1 << self.arity
    }

    pub fn get(&self, idx: usize) -> bool {
        (self.bits >> idx) & 1 == 1
    }

    /// Row index of an argument tuple.
    pub fn index(args: &[bool]) -> usize {
        args.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn eval(&self, args: &[bool]) -> Result<bool> {
        if args.len() != self.arity() {
            return Err(Error::Argument(format!(
                "expected {} arguments, got {}",
                self.arity,
                args.len()
            )));
        }
        Ok(self.get(Self::index(args)))
    }

    /// `f^d(x) = ¬f(¬x)`.
    pub fn dual(&self) -> Self {
        let top = self.rows() - 1;
        let mut bits = 0;
        for i in 0..self.rows() {
            if !self.get(top ^ i) {
                bits |= 1 << i;
            }
        }
        TruthTable { arity: self.arity, bits }
    }

    /// Nullary constants become unary constants; other tables are unchanged.
    pub fn lifted(&self) -> Self {
        if self.arity == 0 {
            TruthTable::constant(1, self.get(0))
        } else {
            *self
        }
    }

    pub fn constant_value(&self) -> Option<bool> {
        match self.bits {
            0 => Some(false),
            b if b == row_mask(self.arity()) => Some(true),
            _ => None,
        }
    }

    pub fn depends_on(&self, var: usize) -> bool {
        let shift = self.arity() - 1 - var;
        (0..self.rows())
            .filter(|i| (i >> shift) & 1 == 0)
            .any(|i| self.get(i) != self.get(i | (1 << shift)))
    }

    pub fn essential_arity(&self) -> usize {
        (0..self.arity()).filter(|&v| self.depends_on(v)).count()
    }

    pub fn check_property(&self, property: Property) -> bool {
        let f = self.lifted();
        let n = f.arity();
        let top = f.rows() - 1;
        match property {
            Property::ZeroReproducing => !f.get(0),
            Property::OneReproducing => f.get(top),
            Property::Monotone => (0..f.rows()).all(|i| {
                (0..n).all(|b| i & (1 << b) != 0 || !f.get(i) || f.get(i | (1 << b)))
            }),
            Property::SelfDual => f.dual() == f,
            Property::Affine => {
                let mut anf = f.bits;
                for b in 0..n {
                    for i in 0..f.rows() {
                        if i & (1 << b) != 0 {
                            anf ^= ((anf >> (i ^ (1 << b))) & 1) << i;
                        }
                    }
                }
                (0..f.rows()).all(|i| (anf >> i) & 1 == 0 || i.count_ones() <= 1)
            }
            Property::OneSeparating => f.separating(true),
            Property::ZeroSeparating => f.separating(false),
        }
    }

    fn separating(&self, c: bool) -> bool {
        let n = self.arity();
        (0..n).any(|j| {
            let shift = n - 1 - j;
            (0..self.rows())
                .filter(|&i| self.get(i) == c)
                .all(|i| ((i >> shift) & 1 == 1) == c)
        })
    }

    /// All tables obtained by identifying variables down to at most `max_arity` arguments.
    pub fn minors(&self, max_arity: usize) -> Vec<TruthTable> {
        let n = self.arity();
        if n <= max_arity {
            return vec![*self];
        }
        let m = max_arity;
        let mut out = Vec::new();
        let mut map = vec![0usize; n];
        loop {
            let g = TruthTable::from_fn(m, |a| {
                let args: Vec<bool> = map.iter().map(|&k| a[k]).collect();
                self.get(Self::index(&args))
            });
            out.push(g);
            let mut pos = 0;
            while pos < n {
                map[pos] += 1;
                if map[pos] < m {
                    break;
                }
                map[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}, \"{}\")", self.arity, self.bitstring())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.arity, self.bitstring())
    }
}

/// Truth tables of the operators that appear in the standard clone bases.
pub mod named {
    use super::TruthTable;

    pub fn and() -> TruthTable {
        TruthTable::from_fn(2, |a| a[0] && a[1])
    }
    pub fn or() -> TruthTable {
        TruthTable::from_fn(2, |a| a[0] || a[1])
    }
    pub fn not() -> TruthTable {
        TruthTable::from_fn(1, |a| !a[0])
    }
    pub fn xor() -> TruthTable {
        TruthTable::from_fn(2, |a| a[0] ^ a[1])
    }
    pub fn equiv() -> TruthTable {
        TruthTable::from_fn(2, |a| a[0] == a[1])
    }
    pub fn nand() -> TruthTable {
        TruthTable::from_fn(2, |a| !(a[0] && a[1]))
    }
    pub fn top() -> TruthTable {
        TruthTable::constant(0, true)
    }
    pub fn bot() -> TruthTable {
        TruthTable::constant(0, false)
    }
    pub fn id() -> TruthTable {
        TruthTable::projection(1, 0)
    }
    /// x ∧ ¬y
    pub fn and_not() -> TruthTable {
        TruthTable::from_fn(2, |a| a[0] && !a[1])
    }
    /// x ∧ (y ∨ z)
    pub fn and_or() -> TruthTable {
        TruthTable::from_fn(3, |a| a[0] && (a[1] || a[2]))
    }
    /// x ∧ (y ↔ z)
    pub fn and_equiv() -> TruthTable {
        TruthTable::from_fn(3, |a| a[0] && (a[1] == a[2]))
    }
    /// (x∧¬y) ∨ (x∧¬z) ∨ (¬y∧¬z)
    pub fn sd() -> TruthTable {
        TruthTable::from_fn(3, |a| (a[0] && !a[1]) || (a[0] && !a[2]) || (!a[1] && !a[2]))
    }
    pub fn maj() -> TruthTable {
        TruthTable::from_fn(3, |a| (a[0] as u8 + a[1] as u8 + a[2] as u8) >= 2)
    }
    /// maj(x, y, ¬z)
    pub fn maj_neg() -> TruthTable {
        TruthTable::from_fn(3, |a| (a[0] as u8 + a[1] as u8 + (!a[2]) as u8) >= 2)
    }
    pub fn xor3() -> TruthTable {
        TruthTable::from_fn(3, |a| a[0] ^ a[1] ^ a[2])
    }
    pub fn xnor3() -> TruthTable {
        TruthTable::from_fn(3, |a| !(a[0] ^ a[1] ^ a[2]))
    }
}
