//! Measures and raw correlators of the finite-chain ground state.

use super::hamiltonian::ChainSpec;
use super::lanczos::{ground_state, GroundStateResult, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::qstate::{
    eg2_of_state, g2_of_state, meyer_wallach, partial_trace, pauli_decompose, von_neumann_entropy,
    Pauli, StateVector,
};
use crate::report::MeasureReport;

/// Below this gap the two lowest levels are treated as degenerate and
/// analytic comparisons are skipped.
pub const DEGENERATE_GAP: f64 = 1e-6;

/// Which sign convention the correlators are quoted in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// `+lambda sum xx + sum z`, as diagonalized.
    Chain,
    /// `-lambda sum xx - sum z`, the frame of the analytic formulas.
    Ferromagnetic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub n_qubits: usize,
    pub energy: f64,
    pub gap: f64,
    pub residual: f64,
    pub measures: MeasureReport,
    pub frame: Frame,
    pub sx: f64,
    pub sz: f64,
    /// `<s^a_0 s^a_l>` for `l = 1..=l_max`.
    pub xx: Vec<f64>,
    pub yy: Vec<f64>,
    pub zz: Vec<f64>,
}

impl OracleReport {
    pub fn is_degenerate(&self) -> bool {
        self.gap < DEGENERATE_GAP
    }

    /// Re-expresses the correlators in the ferromagnetic frame.
    ///
    /// The two Hamiltonians are related by `prod_i sx_i` followed by `sz` on
    /// every odd site, which only closes around the ring for even `N`.
    /// Under it `sz -> -sz`, `xx_l -> (-1)^l xx_l`, `yy_l -> (-1)^l yy_l`.
    pub fn to_ferromagnetic(&self) -> Result<OracleReport> {
        if self.frame == Frame::Ferromagnetic {
            return Ok(self.clone());
        }
        if !self.n_qubits.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "frame change needs an even ring, got N={}",
                self.n_qubits
            )));
        }
        let alternate = |v: &[f64]| {
            v.iter()
                .enumerate()
                .map(|(i, x)| if (i + 1) % 2 == 1 { -x } else { *x })
                .collect::<Vec<_>>()
        };
        Ok(OracleReport {
            frame: Frame::Ferromagnetic,
            sz: -self.sz,
            xx: alternate(&self.xx),
            yy: alternate(&self.yy),
            ..self.clone()
        })
    }

    pub fn xx_at(&self, l: usize) -> Option<f64> {
        l.checked_sub(1).and_then(|i| self.xx.get(i)).copied()
    }

    pub fn yy_at(&self, l: usize) -> Option<f64> {
        l.checked_sub(1).and_then(|i| self.yy.get(i)).copied()
    }

    pub fn zz_at(&self, l: usize) -> Option<f64> {
        l.checked_sub(1).and_then(|i| self.zz.get(i)).copied()
    }
}

/// Ground state plus every measure, `G(2, l)` for `l = 1..=l_max`.
pub fn oracle_measures(spec: &ChainSpec, l_max: usize) -> Result<OracleReport> {
    let gs = ground_state(spec, DEFAULT_TOL)?;
    report_from_ground_state(spec, &gs, l_max)
}

pub fn report_from_ground_state(spec: &ChainSpec, gs: &GroundStateResult, l_max: usize) -> Result<OracleReport> {
    let n = spec.n_qubits();
    if l_max == 0 || l_max >= n {
        return Err(Error::InvalidArgument(format!(
            "l_max must be in 1..{n} for N={n}, got {l_max}"
        )));
    }
    let state = &gs.state;
    let g2l = (1..=l_max)
        .map(|l| g2_of_state(state, l))
        .collect::<Result<Vec<_>>>()?;
    let eg2 = if n >= 3 { eg2_of_state(state)? } else { g2l[0] };
    let rho1 = partial_trace(state, &[0])?;
    let site = single_site_bloch(state)?;

    let mut xx = Vec::with_capacity(l_max);
    let mut yy = Vec::with_capacity(l_max);
    let mut zz = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let table = pauli_decompose(&partial_trace(state, &[0, l])?)?;
        xx.push(table.get(Pauli::X, Pauli::X));
        yy.push(table.get(Pauli::Y, Pauli::Y));
        zz.push(table.get(Pauli::Z, Pauli::Z));
    }

    Ok(OracleReport {
        n_qubits: n,
        energy: gs.energy,
        gap: gs.gap,
        residual: gs.residual,
        measures: MeasureReport {
            lambda: spec.lambda(),
            eg1: meyer_wallach(state)?,
            g2l,
            eg2,
            sv_single_site: von_neumann_entropy(&rho1, 2),
            upper_bound: false,
        },
        frame: Frame::Chain,
        sx: site.0,
        sz: site.1,
        xx,
        yy,
        zz,
    })
}

fn single_site_bloch(state: &StateVector) -> Result<(f64, f64)> {
    let rho = partial_trace(state, &[0])?;
    let e = rho.entries();
    Ok((2.0 * e[(0, 1)].re, (e[(0, 0)] - e[(1, 1)]).re))
}
