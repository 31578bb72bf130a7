//! Per-coupling measure records shared by the analytic and oracle paths.

use crate::ising::IsingMeasures;

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub lambda: f64,
    pub eg1: f64,
    /// `G(2, l)` for `l = 1..=g2l.len()`.
    pub g2l: Vec<f64>,
    pub eg2: f64,
    /// Single-site von Neumann entropy, base 2.
    pub sv_single_site: f64,
    /// Set when `g2l` and `eg2` are upper bounds rather than values
    /// (broken-symmetry side, `lambda > 1`).
    pub upper_bound: bool,
}

impl MeasureReport {
    pub fn g2(&self, l: usize) -> Option<f64> {
        l.checked_sub(1).and_then(|i| self.g2l.get(i)).copied()
    }

    pub fn l_max(&self) -> usize {
        self.g2l.len()
    }
}

impl From<IsingMeasures> for MeasureReport {
    fn from(m: IsingMeasures) -> Self {
        Self {
            upper_bound: m.lambda > 1.0,
            lambda: m.lambda,
            eg1: m.eg1,
            g2l: m.g2l,
            eg2: m.eg2,
            sv_single_site: m.sv,
        }
    }
}
