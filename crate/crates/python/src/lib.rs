//! Python bindings for `vdw-sphere`.
//!
//! Materials are lists of `(plasma, resonance, damping)` tuples and atoms
//! lists of `(frequency, dipole_sq)` tuples, in internal units
//! (`ħ = c = ε₀ = 1`).

use ::vdw_sphere as vdw;
use ::vdw_sphere::{
    Error, Oscillator, PermittivityModel, PolarizabilityModel, QuadratureSpec, SeriesSpec,
    ShortDistanceLaw, SphereSystem, StaticResponse, Transition,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(vdw_sphere, ComputationError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::IndexOutOfRange { .. } => PyValueError::new_err(e.to_string()),
        _ => ComputationError::new_err(e.to_string()),
    }
}

fn material(oscillators: Vec<(f64, f64, f64)>) -> PyResult<PermittivityModel> {
    let list = oscillators
        .into_iter()
        .map(|(p, r, g)| Oscillator::new(p, r, g))
        .collect::<Result<Vec<_>, _>>()
        .map_err(to_py)?;
    Ok(PermittivityModel::new(list))
}

fn atom(transitions: Vec<(f64, f64)>) -> PyResult<PolarizabilityModel> {
    let list = transitions
        .into_iter()
        .map(|(w, d2)| Transition::new(w, d2))
        .collect::<Result<Vec<_>, _>>()
        .map_err(to_py)?;
    Ok(PolarizabilityModel::new(list))
}

fn specs(rel_tol: f64) -> (QuadratureSpec, SeriesSpec) {
    (
        QuadratureSpec {
            rel_tol,
            ..QuadratureSpec::default()
        },
        SeriesSpec::default(),
    )
}

/// `ε(iu)` of a Drude–Lorentz material.
#[pyfunction]
fn permittivity(oscillators: Vec<(f64, f64, f64)>, u: f64) -> PyResult<f64> {
    material(oscillators)?.epsilon_iu(u).map_err(to_py)
}

/// `α(iu)` of an atom.
#[pyfunction]
fn polarizability(transitions: Vec<(f64, f64)>, u: f64) -> PyResult<f64> {
    Ok(atom(transitions)?.alpha_iu(u))
}

/// `(mantissa, log_scale)` of `i_n(x)`; the value is `mantissa * exp(log_scale)`.
#[pyfunction]
fn mod_sph_i(n: usize, x: f64) -> PyResult<(f64, f64)> {
    let s = vdw::mod_sph_i(n, x).map_err(to_py)?;
    Ok((s.value, s.log_scale))
}

/// `(mantissa, log_scale)` of `k_n(x)`.
#[pyfunction]
fn mod_sph_k(n: usize, x: f64) -> PyResult<(f64, f64)> {
    let s = vdw::mod_sph_k(n, x).map_err(to_py)?;
    Ok((s.value, s.log_scale))
}

/// Traced scattering Green tensor at imaginary frequency `u`, as a dict
/// with `value`, `te`, `tm`, `n_used`, `tail_estimate`.
#[pyfunction]
fn green_trace<'py>(
    py: Python<'py>,
    radius: f64,
    oscillators: Vec<(f64, f64, f64)>,
    r_a: f64,
    u: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let sphere = SphereSystem::new(radius, material(oscillators)?).map_err(to_py)?;
    let g = vdw::green_trace(&sphere, r_a, u, &SeriesSpec::default()).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("value", g.value)?;
    d.set_item("te", g.te_value)?;
    d.set_item("tm", g.tm_value)?;
    d.set_item("n_used", g.n_used)?;
    d.set_item("tail_estimate", g.tail_estimate)?;
    Ok(d)
}

/// Potential `U(r_a)` with diagnostics: `energy`, `n_used`, `panels`,
/// `est_error`.
#[pyfunction]
#[pyo3(signature = (radius, oscillators, transitions, r_a, rel_tol = 1e-7))]
fn potential<'py>(
    py: Python<'py>,
    radius: f64,
    oscillators: Vec<(f64, f64, f64)>,
    transitions: Vec<(f64, f64)>,
    r_a: f64,
    rel_tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let sphere = SphereSystem::new(radius, material(oscillators)?).map_err(to_py)?;
    let atom = atom(transitions)?;
    let (q, s) = specs(rel_tol);
    let p = py
        .detach(|| vdw::vdw_potential(&atom, &sphere, r_a, &q, &s))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("energy", p.energy)?;
    d.set_item("n_used", p.diagnostics.n_used_max)?;
    d.set_item("panels", p.diagnostics.panels)?;
    d.set_item("est_error", p.diagnostics.est_error)?;
    Ok(d)
}

/// `(F, error)` with `F = -∂U/∂r_a`; negative means attraction.
#[pyfunction]
#[pyo3(signature = (radius, oscillators, transitions, r_a, rel_tol = 1e-7))]
fn force(
    py: Python<'_>,
    radius: f64,
    oscillators: Vec<(f64, f64, f64)>,
    transitions: Vec<(f64, f64)>,
    r_a: f64,
    rel_tol: f64,
) -> PyResult<(f64, f64)> {
    let sphere = SphereSystem::new(radius, material(oscillators)?).map_err(to_py)?;
    let atom = atom(transitions)?;
    let (q, s) = specs(rel_tol);
    let f = py
        .detach(|| vdw::vdw_force(&atom, &sphere, r_a, &q, &s))
        .map_err(to_py)?;
    Ok((f.force, f.error))
}

/// `K` in the near-surface law `U = -K/Δr³`.
#[pyfunction]
#[pyo3(signature = (oscillators, transitions, rel_tol = 1e-7))]
fn short_distance_coefficient(
    oscillators: Vec<(f64, f64, f64)>,
    transitions: Vec<(f64, f64)>,
    rel_tol: f64,
) -> PyResult<f64> {
    let (q, _) = specs(rel_tol);
    Ok(
        ShortDistanceLaw::new(&atom(transitions)?, &material(oscillators)?, &q)
            .map_err(to_py)?
            .coefficient(),
    )
}

/// Far-field potential `-23 R³ α⁰ (ε⁰-1)/(ε⁰+2) / (16π² r_a⁷)`.
#[pyfunction]
fn retarded_limit(
    radius: f64,
    oscillators: Vec<(f64, f64, f64)>,
    transitions: Vec<(f64, f64)>,
    r_a: f64,
) -> PyResult<f64> {
    let response = StaticResponse::of(&material(oscillators)?);
    Ok(vdw::retarded_limit(
        atom(transitions)?.static_polarizability(),
        response,
        radius,
        r_a,
    ))
}

/// The far-field frequency kernel integral, exactly 23/4.
#[pyfunction]
#[pyo3(signature = (rel_tol = 1e-12))]
fn kernel_integral(rel_tol: f64) -> PyResult<f64> {
    vdw::long_distance_kernel_integral(rel_tol).map_err(to_py)
}

#[pymodule(name = "vdw_sphere")]
fn vdw_sphere_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ComputationError", m.py().get_type::<ComputationError>())?;
    m.add_function(wrap_pyfunction!(permittivity, m)?)?;
    m.add_function(wrap_pyfunction!(polarizability, m)?)?;
    m.add_function(wrap_pyfunction!(mod_sph_i, m)?)?;
    m.add_function(wrap_pyfunction!(mod_sph_k, m)?)?;
    m.add_function(wrap_pyfunction!(green_trace, m)?)?;
    m.add_function(wrap_pyfunction!(potential, m)?)?;
    m.add_function(wrap_pyfunction!(force, m)?)?;
    m.add_function(wrap_pyfunction!(short_distance_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(retarded_limit, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_integral, m)?)?;
    Ok(())
}
