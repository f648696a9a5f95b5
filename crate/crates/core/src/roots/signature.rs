use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

/// A fourth root of unity `i^k`, stored by its exponent `k mod 4`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Unit4 {
    One,
    I,
    MinusOne,
    MinusI,
}

impl Unit4 {
    pub const ALL: [Unit4; 4] = [Unit4::One, Unit4::I, Unit4::MinusOne, Unit4::MinusI];

    fn exponent(self) -> u8 {
        match self {
            Unit4::One => 0,
            Unit4::I => 1,
            Unit4::MinusOne => 2,
            Unit4::MinusI => 3,
        }
    }

    fn from_exponent(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Unit4::One,
            1 => Unit4::I,
            2 => Unit4::MinusOne,
            _ => Unit4::MinusI,
        }
    }

    pub fn inverse(self) -> Self {
        Self::from_exponent(-(self.exponent() as i64))
    }

    pub fn pow(self, n: i64) -> Self {
        Self::from_exponent(self.exponent() as i64 * n)
    }

    pub fn square(self) -> Self {
        self * self
    }

    pub fn from_sign(s: i8) -> Self {
        if s >= 0 {
            Unit4::One
        } else {
            Unit4::MinusOne
        }
    }

    /// `Some(±1)` for real values.
    pub fn as_sign(self) -> Option<i8> {
        match self {
            Unit4::One => Some(1),
            Unit4::MinusOne => Some(-1),
            _ => None,
        }
    }

    /// The two square roots of a sign.
    pub fn square_roots_of(sign: i8) -> [Unit4; 2] {
        if sign >= 0 {
            [Unit4::One, Unit4::MinusOne]
        } else {
            [Unit4::I, Unit4::MinusI]
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit4::One => "1",
            Unit4::I => "i",
            Unit4::MinusOne => "-1",
            Unit4::MinusI => "-i",
        }
    }
}

impl Mul for Unit4 {
    type Output = Unit4;
    fn mul(self, rhs: Unit4) -> Unit4 {
        Unit4::from_exponent(self.exponent() as i64 + rhs.exponent() as i64)
    }
}

impl fmt::Display for Unit4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A signature, keyed by its values on the simple system (in the order the
/// owning root data lists its simple roots).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Signature {
    pub values_on_simple: Vec<i8>,
}

impl Signature {
    pub fn trivial(rank: usize) -> Self {
        Self {
            values_on_simple: vec![1; rank],
        }
    }

    /// Signature number `bits` in the family enumeration: bit `i` set means
    /// `ε(ψ_i) = -1`.
    pub fn from_bits(rank: usize, bits: u64) -> Self {
        Self {
            values_on_simple: (0..rank).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.values_on_simple.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.values_on_simple.iter().all(|&s| s == 1)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self
            .values_on_simple
            .iter()
            .map(|&v| if v == 1 { "+" } else { "-" })
            .collect();
        write!(f, "[{}]", s.join(""))
    }
}

/// A half-signature keyed on the simple system.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct HalfSignature {
    pub values_on_simple: Vec<Unit4>,
}

impl HalfSignature {
    pub fn rank(&self) -> usize {
        self.values_on_simple.len()
    }

    /// `ε̂²` on the simple system.
    pub fn square(&self) -> Signature {
        Signature {
            values_on_simple: self
                .values_on_simple
                .iter()
                .map(|u| u.square().as_sign().expect("square of a fourth root of unity is real"))
                .collect(),
        }
    }
}

impl fmt::Display for HalfSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<&str> = self.values_on_simple.iter().map(|u| u.symbol()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_table() {
        assert_eq!(Unit4::I * Unit4::I, Unit4::MinusOne);
        assert_eq!(Unit4::I * Unit4::MinusI, Unit4::One);
        assert_eq!(Unit4::MinusI.pow(-1), Unit4::I);
        assert_eq!(Unit4::I.pow(3), Unit4::MinusI);
        for u in Unit4::ALL {
            assert_eq!(u * u.inverse(), Unit4::One);
        }
    }

    #[test]
    fn square_roots() {
        for s in [1i8, -1] {
            for r in Unit4::square_roots_of(s) {
                assert_eq!(r.square().as_sign(), Some(s));
            }
        }
    }
}
