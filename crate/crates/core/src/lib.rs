pub mod closedform;
pub mod error;
pub mod exact_arith;
pub mod hopf_words;
pub mod laurent;
pub mod renorm;
pub mod verify;

pub use error::{Error, Result};
pub use exact_arith::{bernoulli, binomial, multinomial, Rational};
pub use laurent::LaurentSeries;
