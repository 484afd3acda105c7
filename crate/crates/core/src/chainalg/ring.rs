use std::fmt;

use crate::error::{Error, Result};

/// Scalar type shared by every ring. Over `Z/m` values are kept in `[0, m)`.
pub type Scalar = i64;

/// Coefficient ring: `Z` when `modulus == 0`, otherwise `Z/modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ring {
    modulus: u64,
}

impl Ring {
    pub const INTEGERS: Ring = Ring { modulus: 0 };

    /// `0` gives `Z`; any `m >= 2` gives `Z/m`.
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 1 || modulus > (1u64 << 31) {
            return Err(Error::Param(format!(
                "modulus must be 0 or in [2, 2^31], got {modulus}"
            )));
        }
        Ok(Ring { modulus })
    }

    pub fn integers() -> Self {
        Self::INTEGERS
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_integers(&self) -> bool {
        self.modulus == 0
    }

    pub fn normalize(&self, x: Scalar) -> Scalar {
        if self.modulus == 0 {
            x
        } else {
            x.rem_euclid(self.modulus as i64)
        }
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.modulus == 0 {
            a.checked_add(b)
                .expect("integer overflow in exact addition")
        } else {
            self.normalize(a + b)
        }
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.modulus == 0 {
            a.checked_sub(b)
                .expect("integer overflow in exact subtraction")
        } else {
            self.normalize(a - b)
        }
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        self.sub(0, a)
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.modulus == 0 {
            a.checked_mul(b)
                .expect("integer overflow in exact multiplication")
        } else {
            ((a as i128 * b as i128).rem_euclid(self.modulus as i128)) as Scalar
        }
    }

    /// `(-1)^n` as a ring element.
    pub fn sign(&self, n: i64) -> Scalar {
        if n.rem_euclid(2) == 0 {
            self.normalize(1)
        } else {
            self.normalize(-1)
        }
    }

    pub fn one(&self) -> Scalar {
        self.normalize(1)
    }

    pub fn inverse(&self, a: Scalar) -> Option<Scalar> {
        let a = self.normalize(a);
        if self.modulus == 0 {
            return match a {
                1 | -1 => Some(a),
                _ => None,
            };
        }
        let m = self.modulus as i64;
        let (g, x, _) = ext_gcd(a, m);
        (g == 1).then(|| x.rem_euclid(m))
    }

    pub fn is_unit(&self, a: Scalar) -> bool {
        self.inverse(a).is_some()
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }
}

impl Default for Ring {
    fn default() -> Self {
        Self::INTEGERS
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.modulus {
            0 => write!(f, "Z"),
            m => write!(f, "Z/{m}"),
        }
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}
