//! Small closed expression trees for radical values such as
//! `((-2)^(1/7))^4 * (-1 + 1/2*sqrt(6))`.
//!
//! Node kinds: `rational`, `sqrt`, `nth-root` (real root, odd index for
//! negative radicands), `add`, `mul`, `pow` (nonnegative integer exponent) and
//! `real-root` (the largest real zero of a rational polynomial).

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact_num::Rational;
use crate::poly::RatPoly;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Expr {
    Rational {
        #[serde(with = "crate::exact_num::serde_rational")]
        value: Rational,
    },
    Sqrt {
        arg: Box<Expr>,
    },
    NthRoot {
        n: u32,
        arg: Box<Expr>,
    },
    Add {
        terms: Vec<Expr>,
    },
    Mul {
        factors: Vec<Expr>,
    },
    Pow {
        base: Box<Expr>,
        exp: u32,
    },
    RealRoot {
        /// Coefficients, index = degree.
        #[serde(with = "crate::exact_num::serde_rational::vec")]
        poly: Vec<Rational>,
    },
}

impl Expr {
    pub fn rational(value: Rational) -> Expr {
        Expr::Rational { value }
    }

    pub fn sqrt(arg: Expr) -> Expr {
        Expr::Sqrt { arg: Box::new(arg) }
    }

    pub fn nth_root(n: u32, arg: Expr) -> Expr {
        Expr::NthRoot {
            n,
            arg: Box::new(arg),
        }
    }

    pub fn pow(base: Expr, exp: u32) -> Expr {
        Expr::Pow {
            base: Box::new(base),
            exp,
        }
    }

    pub fn real_root(poly: &RatPoly) -> Expr {
        Expr::RealRoot {
            poly: poly.coeffs().to_vec(),
        }
    }

    /// Sum with rational zero terms dropped and single terms unwrapped.
    pub fn sum(terms: Vec<Expr>) -> Expr {
        let mut terms: Vec<Expr> = terms.into_iter().filter(|t| !t.is_zero_literal()).collect();
        match terms.len() {
            0 => Expr::rational(Rational::zero()),
            1 => terms.pop().unwrap(),
            _ => Expr::Add { terms },
        }
    }

    /// Product with rational one factors dropped; a rational zero factor
    /// collapses the product.
    pub fn product(factors: Vec<Expr>) -> Expr {
        if factors.iter().any(Expr::is_zero_literal) {
            return Expr::rational(Rational::zero());
        }
        let mut factors: Vec<Expr> = factors
            .into_iter()
            .filter(|f| !matches!(f, Expr::Rational { value } if value.is_one()))
            .collect();
        match factors.len() {
            0 => Expr::rational(Rational::one()),
            1 => factors.pop().unwrap(),
            _ => Expr::Mul { factors },
        }
    }

    fn is_zero_literal(&self) -> bool {
        matches!(self, Expr::Rational { value } if value.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Expr::Rational { value } => Some(value),
            _ => None,
        }
    }

    fn is_atomic(&self) -> bool {
        match self {
            Expr::Rational { value } => value.is_integer() && !value.is_negative(),
            Expr::Sqrt { .. } | Expr::NthRoot { .. } | Expr::RealRoot { .. } => true,
            _ => false,
        }
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Add { .. } => write!(f, "({e})"),
        Expr::Rational { value } if !value.is_integer() || value.is_negative() => {
            write!(f, "({e})")
        }
        _ => write!(f, "{e}"),
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Rational { value } => write!(f, "{value}"),
            Expr::Sqrt { arg } => write!(f, "sqrt({arg})"),
            Expr::NthRoot { n, arg } => {
                if arg.is_atomic() {
                    write!(f, "{arg}^(1/{n})")
                } else {
                    write!(f, "({arg})^(1/{n})")
                }
            }
            Expr::Add { terms } => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            Expr::Mul { factors } => {
                for (i, t) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    write_factor(f, t)?;
                }
                Ok(())
            }
            Expr::Pow { base, exp } => {
                if base.is_atomic() && !matches!(**base, Expr::NthRoot { .. }) {
                    write!(f, "{base}^{exp}")
                } else {
                    write!(f, "({base})^{exp}")
                }
            }
            Expr::RealRoot { poly } => {
                write!(f, "largest_real_root({})", RatPoly::new(poly.clone()))
            }
        }
    }
}
