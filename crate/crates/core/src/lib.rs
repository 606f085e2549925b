pub mod check;
pub mod classify;
pub mod closure;
pub mod error;
pub mod field;
pub mod filtration;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod job;
pub mod pipeline;
pub mod poly;
pub mod reduction;
pub mod sally;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use filtration::{Filtration, FiltrationKind};
pub use groebner::{buchberger, GroebnerBasis};
pub use ideal::{quotient_length, Ideal};
pub use poly::{parse_polynomial, Monomial, MonomialOrder, Polynomial, Ring};
