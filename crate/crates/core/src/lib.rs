//! Supertropical monoids over the cyclic ghost chain M = {e, c, c², …} ∪ {0}.

pub mod ambient;
pub mod catalog;
pub mod cli;
pub mod covers;
pub mod divisor;
pub mod dot;
pub mod error;
pub mod fate;
pub mod ghost;
pub mod monomial;
pub mod partition;
pub mod presentation;
pub mod quotients;
pub mod relations;
pub mod restricted;
pub mod transmissions;
mod union_find;

pub use ambient::{Ambient, AmbientElement, AmbientMode, Generator};
pub use error::{Error, Result};
pub use ghost::GhostValue;
pub use monomial::{gcd_lcm, Monomial};
pub use quotients::{AbProperties, CoreSubmonoid, FormRequest, QuotientElement, QuotientPresentation};
pub use relations::{GeneratorPair, MfceRelation, Slice};
