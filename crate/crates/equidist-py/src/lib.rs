//! Python bindings.  Reports cross the boundary as JSON strings; small
//! numeric results as tuples.

use equidist::eisenstein::eisenstein_eval;
use equidist::kirillov::{mock_supercuspidal, whittaker_supercuspidal};
use equidist::local_integrals::iwasawa_weights as weights;
use equidist::modular_curve::{cusp_table, divisor_lambda};
use equidist::newform::{deligne_check, growth_check, hecke_check, default_growth_samples, NewformClient};
use equidist::padic::enumerate_chars;
use equidist::verify;
use equidist::whittaker::{DuConvention, PrincipalSeriesRamified, PsEngine};
use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::json;

fn err(e: equidist::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_string(v: impl serde::Serialize) -> PyResult<String> {
    serde_json::to_string(&v).map_err(|e| PyValueError::new_err(e.to_string()))
}

pub fn gauss_json(primes: &[u64], kmax: u32) -> equidist::Result<serde_json::Value> {
    Ok(verify::gauss_suite(primes, kmax)?.to_json())
}

pub fn whittaker_json(kind: &str, p: u64, level: u32, i: u32, seed: u64) -> equidist::Result<serde_json::Value> {
    let table = match kind {
        "sc" => whittaker_supercuspidal(&mock_supercuspidal(p, level, seed)?, i)?,
        "ps" => {
            let t = enumerate_chars(p, level, level)
                .first()
                .map(|c| c.t)
                .ok_or_else(|| equidist::Error::InvalidArgument("no character of that level".into()))?;
            let rep = PrincipalSeriesRamified::trivial_central(p, level, t, 1, 0)?;
            let eng = PsEngine::new(&rep, DuConvention::Additive)?;
            let (lo, hi) = eng.natural_window(i);
            eng.table(i, lo, hi)?
        }
        _ => return Err(equidist::Error::InvalidArgument(format!("kind {:?} is not 'ps' or 'sc'", kind))),
    };
    Ok(table.to_json())
}

/// Gauss-integral suite; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (primes, kmax = 3))]
fn gauss_suite(primes: Vec<u64>, kmax: u32) -> PyResult<String> {
    to_string(gauss_json(&primes, kmax).map_err(err)?)
}

/// Shifted character-integral suite; returns the JSON report.
#[pyfunction]
#[pyo3(signature = (primes, imax = 3))]
fn trichotomy_suite(primes: Vec<u64>, imax: u32) -> PyResult<String> {
    to_string(verify::trichotomy_suite(&primes, imax).map_err(err)?.to_json())
}

/// Iwasawa weights `A_0..A_c` as (numerator, denominator) strings.
#[pyfunction]
fn iwasawa_weights(p: u64, c: u32) -> PyResult<Vec<(String, String)>> {
    Ok(weights(p, c)
        .map_err(err)?
        .weights
        .iter()
        .map(|q| (q.numer().to_string(), q.denom().to_string()))
        .collect())
}

/// `W^(i)` table as JSON; `kind` is "ps" (level = k) or "sc" (level = c).
#[pyfunction]
#[pyo3(signature = (kind, p, level, i, seed = 0))]
fn whittaker(kind: &str, p: u64, level: u32, i: u32, seed: u64) -> PyResult<String> {
    to_string(whittaker_json(kind, p, level, i, seed).map_err(err)?)
}

/// Cusps of Gamma0(N) as (c, d, width) with widths relative to q.
#[pyfunction]
#[pyo3(signature = (level, q = None))]
fn cusps(level: u64, q: Option<u64>) -> PyResult<Vec<(u64, u64, u64)>> {
    Ok(cusp_table(level, q.unwrap_or(level))
        .map_err(err)?
        .into_iter()
        .map(|r| (r.c, r.d, r.width))
        .collect())
}

/// `λ(n) = Σ_{ab=n} (a/b)^{it}`.
#[pyfunction]
fn eisenstein_lambda(n: u64, t: f64) -> (f64, f64) {
    let z = divisor_lambda(n, Complex64::new(0.0, t));
    (z.re, z.im)
}

/// `E(z, s)` for level 1, with the truncation tail bound.
#[pyfunction]
fn eisenstein(x: f64, y: f64, s_re: f64, s_im: f64) -> PyResult<(f64, f64, f64)> {
    let v = eisenstein_eval(Complex64::new(x, y), Complex64::new(s_re, s_im), None).map_err(err)?;
    Ok((v.re, v.im, v.tail_bound))
}

/// Deligne, Hecke and growth checks on a newform label; JSON summary.
#[pyfunction]
#[pyo3(signature = (label, offline = true))]
fn newform_checks(label: &str, offline: bool) -> PyResult<String> {
    let mut client = NewformClient::from_env();
    client.offline = offline;
    let (rec, _) = client.fetch(label).map_err(err)?;
    let d = deligne_check(&rec);
    let h = hecke_check(&rec);
    let g = growth_check(&rec, &default_growth_samples()).map_err(err)?;
    to_string(json!({
        "label": rec.label,
        "deligne": {"pass": d.pass, "max_abs_lambda_p": d.max_abs_lambda_p},
        "hecke": {"pass": h.pass, "max_recursion_err": h.max_recursion_err, "max_multiplicative_err": h.max_multiplicative_err},
        "growth": {"pass": g.pass, "max_ratio": g.max_ratio},
    }))
}

#[pymodule]
fn equidist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(gauss_suite, m)?)?;
    m.add_function(wrap_pyfunction!(trichotomy_suite, m)?)?;
    m.add_function(wrap_pyfunction!(iwasawa_weights, m)?)?;
    m.add_function(wrap_pyfunction!(whittaker, m)?)?;
    m.add_function(wrap_pyfunction!(cusps, m)?)?;
    m.add_function(wrap_pyfunction!(eisenstein_lambda, m)?)?;
    m.add_function(wrap_pyfunction!(eisenstein, m)?)?;
    m.add_function(wrap_pyfunction!(newform_checks, m)?)?;
    Ok(())
}
