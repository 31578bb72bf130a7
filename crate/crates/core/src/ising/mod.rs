//! Thermodynamic-limit pipeline for `H = lambda sum sx_i sx_{i+1} + sum sz_i`.

mod correlators;
mod measures;
pub mod quadrature;

pub use correlators::{
    g_correlator, g_correlator_with, single_site_rho, sx_mean, toeplitz_determinant,
    two_site_purity, two_site_rho, two_site_table, xx_correlator, xx_correlator_sized, yy_correlator,
    yy_correlator_sized, zz_correlator, Denominator, IsingPoint, ToeplitzSize, MAX_G_INDEX,
};
pub use measures::{eg1_ising, eg2_ising, g2_saturation_ising, g2l_ising, IsingMeasures};
pub use quadrature::{QuadratureRule, QuadratureSpec};
