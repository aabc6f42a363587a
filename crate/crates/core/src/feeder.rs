//! Single-phase-equivalent feeder model.
//!
//! Builds the bus admittance matrix from pi-model line data, the per-bus
//! Hermitian injection matrices, the linear power map `h_i(V)`, and the
//! constraint-qualification check used by the network operator.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::linalg::{matrix_rank, ComplexMatrix, HermitianMatrix, RealMatrix};
use crate::types::PqPair;

#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Bus index; node 0 is the substation/slack.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BusId(pub usize);

impl fmt::Display for BusId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BusClass {
    /// Secondary of the step-down transformer (node 0).
    Substation,
    /// Node hosting an inverter-interfaced PV system.
    Inverter,
    /// Node with no generation.
    Passive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BusSpec {
    pub id: BusId,
    pub class: BusClass,
    /// Demanded complex power at the bus, per unit.
    pub load: PqPair,
}

/// Line between two buses as a pi-equivalent: series impedance plus a total
/// shunt admittance split half per terminal. All values per unit.
#[derive(Clone, Debug, PartialEq)]
pub struct LineSpec {
    pub from: BusId,
    pub to: BusId,
    pub series_impedance: Complex64,
    pub total_shunt_admittance: Complex64,
}

/// Base quantities used for per-unit conversion of external data.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BaseValues {
    pub s_kva: f64,
    pub v_kv: f64,
}

impl BaseValues {
    /// Ohms per one per-unit impedance.
    pub fn z_base_ohm(&self) -> f64 {
        1000.0 * self.v_kv * self.v_kv / self.s_kva
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VoltageLimits {
    pub v_min: f64,
    pub v_max: f64,
    /// Substation voltage magnitude, per unit.
    pub v0: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FeederError {
    NoSubstation,
    DuplicateBus(BusId),
    NonContiguousIds,
    WrongSubstationClass(BusId),
    Disconnected(BusId),
    ZeroImpedanceLine(BusId, BusId),
    SelfLoop(BusId),
    LineEndpointOutOfRange(BusId, BusId),
    NonFiniteLoad(BusId),
    BadVoltageLimits(String),
    BadBase(String),
}

impl fmt::Display for FeederError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FeederError::NoSubstation => write!(f, "bus 0 (substation) is missing"),
            FeederError::DuplicateBus(id) => write!(f, "duplicate bus id {id}"),
            FeederError::NonContiguousIds => write!(f, "bus ids must cover 0..N without gaps"),
            FeederError::WrongSubstationClass(id) => {
                write!(f, "bus {id}: only bus 0 may be the substation, and bus 0 must be")
            }
            FeederError::Disconnected(id) => write!(f, "bus {id} is not connected to the substation"),
            FeederError::ZeroImpedanceLine(a, b) => {
                write!(f, "line {a}-{b} has zero series impedance")
            }
            FeederError::SelfLoop(id) => write!(f, "line {id}-{id} connects a bus to itself"),
            FeederError::LineEndpointOutOfRange(a, b) => {
                write!(f, "line {a}-{b} references an unknown bus")
            }
            FeederError::NonFiniteLoad(id) => write!(f, "bus {id} has a non-finite load"),
            FeederError::BadVoltageLimits(msg) => write!(f, "voltage limits: {msg}"),
            FeederError::BadBase(msg) => write!(f, "base values: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FeederError {}

/// Validated feeder model. Immutable after construction; all queries are
/// read-only.
#[derive(Clone, Debug, PartialEq)]
pub struct FeederModel {
    buses: Vec<BusSpec>,
    lines: Vec<LineSpec>,
    base: BaseValues,
    limits: VoltageLimits,
}

impl FeederModel {
    pub fn new(
        mut buses: Vec<BusSpec>,
        lines: Vec<LineSpec>,
        base: BaseValues,
        limits: VoltageLimits,
    ) -> Result<Self, FeederError> {
        if !(base.s_kva > 0.0) || !(base.v_kv > 0.0) {
            return Err(FeederError::BadBase(format!(
                "s_kva={}, v_kv={} must be positive",
                base.s_kva, base.v_kv
            )));
        }
        if !(limits.v_min > 0.0 && limits.v_min < limits.v_max) {
            return Err(FeederError::BadVoltageLimits(format!(
                "need 0 < v_min < v_max, got [{}, {}]",
                limits.v_min, limits.v_max
            )));
        }
        if !(limits.v0 >= limits.v_min && limits.v0 <= limits.v_max) {
            return Err(FeederError::BadVoltageLimits(format!(
                "substation magnitude {} outside [{}, {}]",
                limits.v0, limits.v_min, limits.v_max
            )));
        }
        buses.sort_by_key(|b| b.id);
        let n_buses = buses.len();
        if n_buses == 0 || buses[0].id != BusId(0) {
            return Err(FeederError::NoSubstation);
        }
        for w in buses.windows(2) {
            if w[0].id == w[1].id {
                return Err(FeederError::DuplicateBus(w[0].id));
            }
        }
        if buses.last().unwrap().id != BusId(n_buses - 1) {
            return Err(FeederError::NonContiguousIds);
        }
        for b in &buses {
            if (b.id == BusId(0)) != (b.class == BusClass::Substation) {
                return Err(FeederError::WrongSubstationClass(b.id));
            }
            if !b.load.is_finite() {
                return Err(FeederError::NonFiniteLoad(b.id));
            }
        }
        // union-find connectivity; disconnected input is rejected outright
        let mut parent: Vec<usize> = (0..n_buses).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for line in &lines {
            if line.from == line.to {
                return Err(FeederError::SelfLoop(line.from));
            }
            if line.from.0 >= n_buses || line.to.0 >= n_buses {
                return Err(FeederError::LineEndpointOutOfRange(line.from, line.to));
            }
            if line.series_impedance.norm() == 0.0 {
                return Err(FeederError::ZeroImpedanceLine(line.from, line.to));
            }
            let a = find(&mut parent, line.from.0);
            let b = find(&mut parent, line.to.0);
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        for i in 1..n_buses {
            if find(&mut parent, i) != root {
                return Err(FeederError::Disconnected(BusId(i)));
            }
        }
        Ok(Self {
            buses,
            lines,
            base,
            limits,
        })
    }

    /// Highest bus index N; the feeder has N+1 buses.
    pub fn n(&self) -> usize {
        self.buses.len() - 1
    }

    pub fn bus_count(&self) -> usize {
        self.buses.len()
    }

    pub fn buses(&self) -> &[BusSpec] {
        &self.buses
    }

    pub fn lines(&self) -> &[LineSpec] {
        &self.lines
    }

    pub fn base(&self) -> BaseValues {
        self.base
    }

    pub fn limits(&self) -> VoltageLimits {
        self.limits
    }

    pub fn load(&self, bus: BusId) -> PqPair {
        self.buses[bus.0].load
    }

    pub fn class(&self, bus: BusId) -> BusClass {
        self.buses[bus.0].class
    }

    /// Inverter-hosting buses, ascending.
    pub fn inverter_buses(&self) -> Vec<BusId> {
        self.buses
            .iter()
            .filter(|b| b.class == BusClass::Inverter)
            .map(|b| b.id)
            .collect()
    }

    /// Buses with no generation, ascending.
    pub fn passive_buses(&self) -> Vec<BusId> {
        self.buses
            .iter()
            .filter(|b| b.class == BusClass::Passive)
            .map(|b| b.id)
            .collect()
    }
}

/// Bus admittance matrix from the pi-model stamp: off-diagonal `(m, n)` gets
/// `-y_series`, each diagonal accumulates `y_series + y_shunt/2` per incident
/// line. The result is complex symmetric, not conjugate symmetric.
pub fn build_admittance(model: &FeederModel) -> ComplexMatrix {
    let n = model.bus_count();
    let mut y = ComplexMatrix::zeros(n);
    for line in model.lines() {
        let ys = 1.0 / line.series_impedance;
        let half_shunt = 0.5 * line.total_shunt_admittance;
        let (a, b) = (line.from.0, line.to.0);
        y.add_to(a, a, ys + half_shunt);
        y.add_to(b, b, ys + half_shunt);
        y.add_to(a, b, -ys);
        y.add_to(b, a, -ys);
    }
    y
}

/// The Hermitian matrices through which powers and squared voltage
/// magnitudes become linear in `V = v v^H`:
/// `Phi_i = (Y_i + Y_i^H)/2`, `Psi_i = j(Y_i - Y_i^H)/2`, `Ups_i = e_i e_i^T`
/// with `Y_i = e_i e_i^T Y`.
#[derive(Clone, Debug)]
pub struct InjectionMatrices {
    phi: Vec<HermitianMatrix>,
    psi: Vec<HermitianMatrix>,
    ups: Vec<HermitianMatrix>,
}

impl InjectionMatrices {
    pub fn build(y: &ComplexMatrix) -> Self {
        let n = y.dim();
        let mut phi = Vec::with_capacity(n);
        let mut psi = Vec::with_capacity(n);
        let mut ups = Vec::with_capacity(n);
        for i in 0..n {
            let (p, s, u) = injection_matrices_at(y, BusId(i));
            phi.push(p);
            psi.push(s);
            ups.push(u);
        }
        Self { phi, psi, ups }
    }

    pub fn bus_count(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self, i: BusId) -> &HermitianMatrix {
        &self.phi[i.0]
    }

    pub fn psi(&self, i: BusId) -> &HermitianMatrix {
        &self.psi[i.0]
    }

    pub fn ups(&self, i: BusId) -> &HermitianMatrix {
        &self.ups[i.0]
    }

    /// Sum of all `Phi_i`; its trace against `V` is the total network loss.
    pub fn loss_matrix(&self) -> HermitianMatrix {
        let n = self.phi[0].dim();
        let mut l = HermitianMatrix::zeros(n);
        for p in &self.phi {
            l.add_scaled(p, 1.0);
        }
        l
    }
}

/// Injection matrices for a single bus. `Y_i = e_i e_i^T Y` has row `i` of
/// `Y` and zeros elsewhere, so the symmetrized forms only touch row/column
/// `i`.
pub fn injection_matrices_at(
    y: &ComplexMatrix,
    i: BusId,
) -> (HermitianMatrix, HermitianMatrix, HermitianMatrix) {
    let n = y.dim();
    assert!(i.0 < n, "bus index {i} out of range for {n} buses");
    let mut phi_raw = ComplexMatrix::zeros(n);
    let mut psi_raw = ComplexMatrix::zeros(n);
    let j = Complex64::new(0.0, 1.0);
    for m in 0..n {
        for k in 0..n {
            // Y_i[m][k] = [m == i] * Y[i][k]
            let yik = if m == i.0 {
                y.get(i.0, k)
            } else {
                Complex64::new(0.0, 0.0)
            };
            // (Y_i^H)[m][k] = conj(Y_i[k][m]) = [k == i] * conj(Y[i][m])
            let yih = if k == i.0 {
                y.get(i.0, m).conj()
            } else {
                Complex64::new(0.0, 0.0)
            };
            phi_raw.set(m, k, 0.5 * (yik + yih));
            psi_raw.set(m, k, 0.5 * j * (yik - yih));
        }
    }
    let mut ups = HermitianMatrix::zeros(n);
    ups.set_pair(i.0, i.0, Complex64::new(1.0, 0.0));
    (
        HermitianMatrix::from_complex(&phi_raw),
        HermitianMatrix::from_complex(&psi_raw),
        ups,
    )
}

/// The linear map `h_i(V) = [Tr(Phi_i V), Tr(Psi_i V)]`, both components
/// mathematically real for Hermitian `V`.
pub fn h_of_v(mats: &InjectionMatrices, v: &HermitianMatrix, i: BusId) -> PqPair {
    debug_assert_eq!(v.dim(), mats.bus_count());
    PqPair::new(
        mats.phi(i).trace_product(v),
        mats.psi(i).trace_product(v),
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct CqReport {
    pub independent: bool,
    pub rank: usize,
    pub expected: usize,
}

/// Check that the gradients of the power-balance constraints with respect to
/// `[vec(V); u]` are linearly independent. The derivative block in `u` is
/// `-I`, which makes the stacked rows independent for any topology; the rank
/// is computed anyway and reported.
pub fn check_constraint_qualification(model: &FeederModel, mats: &InjectionMatrices) -> CqReport {
    let inv_buses = model.inverter_buses();
    let nd = inv_buses.len();
    let svec_dim = model.bus_count() * model.bus_count();
    let expected = 2 * nd;
    let mut jac = RealMatrix::zeros(expected, svec_dim + expected);
    for (k, bus) in inv_buses.iter().enumerate() {
        let phi = mats.phi(*bus).svec();
        let psi = mats.psi(*bus).svec();
        for (j, v) in phi.iter().enumerate() {
            jac.set(2 * k, j, *v);
        }
        for (j, v) in psi.iter().enumerate() {
            jac.set(2 * k + 1, j, *v);
        }
        jac.set(2 * k, svec_dim + 2 * k, -1.0);
        jac.set(2 * k + 1, svec_dim + 2 * k + 1, -1.0);
    }
    let rank = matrix_rank(&jac, 1e-12);
    CqReport {
        independent: rank == expected,
        rank,
        expected,
    }
}
