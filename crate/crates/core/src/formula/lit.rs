use std::fmt;
use std::ops::Not;

/// A propositional variable, numbered from 0 internally.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Var(u32);

impl Var {
    pub const fn new(index: u32) -> Var {
        Var(index)
    }

    /// Variable for a 1-based DIMACS index.
    pub fn from_dimacs(index: u32) -> Var {
        assert!(index > 0, "DIMACS variables start at 1");
        Var(index - 1)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn to_dimacs(self) -> i32 {
        self.0 as i32 + 1
    }

    #[inline]
    pub fn lit(self, positive: bool) -> Lit {
        Lit::new(self, positive)
    }

    #[inline]
    pub fn positive(self) -> Lit {
        Lit::new(self, true)
    }

    #[inline]
    pub fn negative(self) -> Lit {
        Lit::new(self, false)
    }
}

/// A literal. The positive literal of variable `v` has code `2v`, the negative one `2v + 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit((var.0 << 1) | (!positive as u32))
    }

    #[inline]
    pub const fn from_code(code: u32) -> Lit {
        Lit(code)
    }

    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    /// `true` for the negative literal (code is odd).
    #[inline]
    pub fn is_negative(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        !self.is_negative()
    }

    /// Literal for a signed DIMACS integer. Panics on 0.
    pub fn from_dimacs(value: i32) -> Lit {
        assert!(
            value != 0,
            "0 is the DIMACS clause terminator, not a literal"
        );
        Lit::new(Var::from_dimacs(value.unsigned_abs()), value > 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var().to_dimacs();
        if self.is_negative() {
            -v
        } else {
            v
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

/// Complementary literal.
#[inline]
pub fn negate(lit: Lit) -> Lit {
    !lit
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Three-valued assignment of a variable or literal.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum LBool {
    True,
    False,
    #[default]
    Undef,
}

impl LBool {
    #[inline]
    pub fn from_bool(b: bool) -> LBool {
        if b {
            LBool::True
        } else {
            LBool::False
        }
    }

    #[inline]
    pub fn is_undef(self) -> bool {
        self == LBool::Undef
    }

    #[inline]
    pub fn negate(self) -> LBool {
        match self {
            LBool::True => LBool::False,
            LBool::False => LBool::True,
            LBool::Undef => LBool::Undef,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encoding_matches_code_layout() {
        let x2 = Var::new(2);
        assert_eq!(x2.positive().code(), 4);
        assert_eq!(negate(Lit::from_code(4)).code(), 5);
        assert_eq!(negate(negate(Lit::from_code(7))).code(), 7);
        assert_eq!(Lit::from_code(7).var(), Var::new(3));
        assert!(Lit::from_code(7).is_negative());
    }

    #[test]
    fn dimacs_round_trip() {
        let l = Lit::from_dimacs(3);
        assert_eq!(l.var().index(), 2);
        assert_eq!((!l).to_dimacs(), -3);
        assert_eq!(Lit::from_dimacs(-3), !l);
    }

    proptest! {
        #[test]
        fn negation_is_involution(code in 0u32..1_000_000) {
            let l = Lit::from_code(code);
            prop_assert_eq!(!!l, l);
            prop_assert_ne!(!l, l);
            prop_assert_eq!(l.var().index(), code as usize / 2);
            prop_assert_eq!(l.is_negative(), code % 2 == 1);
        }

        #[test]
        fn both_polarities_share_variable(v in 0u32..1_000_000) {
            let var = Var::new(v);
            prop_assert_eq!(var.positive().var(), var);
            prop_assert_eq!(var.negative().var(), var);
        }
    }
}
