//! Known functions for sampling values, error columns and pole removal.

use padetype_core::Complex64;
use serde::{Deserialize, Serialize};

/// `g(scale * t)` for one of a few closed forms `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    Exp,
    Cos,
    Sin,
    Log1p,
    /// `log(1 + x) / x`
    LogRatio,
    /// `tan(x) / x`
    TanRatio,
    /// `2 (1 - cos x) / x`
    OneMinusCosRatio,
}

impl Builtin {
    pub fn eval(self, x: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let at_zero = x.norm() == 0.0;
        match self {
            Self::Exp => x.exp(),
            Self::Cos => x.cos(),
            Self::Sin => x.sin(),
            Self::Log1p => (one + x).ln(),
            Self::LogRatio if at_zero => one,
            Self::LogRatio => (one + x).ln() / x,
            Self::TanRatio if at_zero => one,
            Self::TanRatio => x.tan() / x,
            Self::OneMinusCosRatio if at_zero => Complex64::new(0.0, 0.0),
            Self::OneMinusCosRatio => 2.0 * (one - x.cos()) / x,
        }
    }
}

fn unit() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionRef {
    pub function: Builtin,
    #[serde(default = "unit")]
    pub scale: f64,
}

impl FunctionRef {
    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.function.eval(t * self.scale)
    }
}
