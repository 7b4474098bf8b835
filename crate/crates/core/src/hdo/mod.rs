//! The homogenized ring of differential operators: exponents, orders,
//! operators, products and homogenization.

mod exponent;
mod operator;
mod order;

pub use exponent::Exponent;
pub use operator::{render_monomial, HOperator, LeadingData};
pub use order::{BaseOrder, OrderSpec, Weight};

use std::cmp::Ordering;

use crate::coeffs::{Coeff, ParamIdeal};
use crate::error::Result;

/// Compares two exponents under `ord`.
pub fn compare(a: &Exponent, b: &Exponent, ord: &OrderSpec) -> Ordering {
    ord.compare(a, b)
}

pub fn leading_data<C: Coeff>(p: &HOperator<C>, ord: &OrderSpec) -> Result<LeadingData<C>> {
    p.leading(ord)
}

pub fn leading_data_mod_q<C: Coeff>(
    p: &HOperator<C>,
    ord: &OrderSpec,
    q: &ParamIdeal,
) -> Result<LeadingData<C>> {
    p.leading_mod(ord, q)
}
