//! Named smooth initial profiles vanishing at xi = 0.

use serde::{Deserialize, Serialize};

use super::state::EvolutionState;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    /// u = xi
    Linear,
    /// u = xi (1 - xi)
    Parabola,
    /// u = sin(2 xi) (1 - xi)
    Sine,
    /// u = xi exp(-xi)
    Exponential,
}

impl Profile {
    pub const ALL: [Profile; 4] = [Profile::Linear, Profile::Parabola, Profile::Sine, Profile::Exponential];

    pub fn eval(&self, xi: f64) -> f64 {
        match self {
            Profile::Linear => xi,
            Profile::Parabola => xi * (1.0 - xi),
            Profile::Sine => (2.0 * xi).sin() * (1.0 - xi),
            Profile::Exponential => xi * (-xi).exp(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Profile::Linear => "linear",
            Profile::Parabola => "parabola",
            Profile::Sine => "sine",
            Profile::Exponential => "exponential",
        }
    }

    pub fn sample(&self, n: usize) -> Result<EvolutionState> {
        EvolutionState::from_profile(|xi| self.eval(xi), n)
    }
}
