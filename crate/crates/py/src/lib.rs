//! Python bindings. Build with `maturin develop` from this directory; the
//! module is importable as `catcong`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use catcong::congruences::{self as cg, CongruenceId};
use catcong::primes::PrimeRange;
use catcong::sweep::SweepConfig;

create_exception!(catcong, CatcongError, PyValueError);

fn to_py(e: catcong::Error) -> PyErr {
    match e {
        catcong::Error::NotInvertible { .. } => PyZeroDivisionError::new_err(e.to_string()),
        other => CatcongError::new_err(other.to_string()),
    }
}

fn parse_id(id: &str) -> PyResult<CongruenceId> {
    id.parse().map_err(to_py)
}

/// A canonical residue modulo `modulus`.
#[pyclass(name = "Residue", module = "catcong", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PyResidue(catcong::modarith::Residue);

#[pymethods]
impl PyResidue {
    #[new]
    fn new(value: BigInt, modulus: u64) -> PyResult<Self> {
        if modulus < 2 {
            return Err(to_py(catcong::Error::InvalidModulus(modulus)));
        }
        Ok(Self(catcong::modarith::Residue::from_bigint(&value, modulus)))
    }

    #[getter]
    fn value(&self) -> u64 {
        self.0.value()
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.0.modulus()
    }

    fn inv(&self) -> PyResult<Self> {
        self.0.inv().map(Self).map_err(to_py)
    }

    fn __pow__(&self, exp: u64, _modulo: Option<u64>) -> Self {
        Self(self.0.pow(exp))
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.same_modulus(other)?;
        Ok(Self(self.0 + other.0))
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.same_modulus(other)?;
        Ok(Self(self.0 - other.0))
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.same_modulus(other)?;
        Ok(Self(self.0 * other.0))
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.same_modulus(other)?;
        self.0.div(other.0).map(Self).map_err(to_py)
    }

    fn __neg__(&self) -> Self {
        Self(-self.0)
    }

    fn __int__(&self) -> u64 {
        self.0.value()
    }

    fn __repr__(&self) -> String {
        format!("Residue({}, {})", self.0.value(), self.0.modulus())
    }
}

impl PyResidue {
    fn same_modulus(&self, other: &Self) -> PyResult<()> {
        if self.0.modulus() != other.0.modulus() {
            return Err(CatcongError::new_err(format!(
                "moduli differ: {} vs {}",
                self.0.modulus(),
                other.0.modulus()
            )));
        }
        Ok(())
    }
}

/// `p^val * unit` modulo `p^(val + exponent)`.
#[pyclass(name = "ValuedResidue", module = "catcong", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyValuedResidue(catcong::binomial::ValuedResidue);

#[pymethods]
impl PyValuedResidue {
    #[getter]
    fn unit(&self) -> u64 {
        self.0.unit()
    }

    #[getter]
    fn val(&self) -> u32 {
        self.0.val()
    }

    #[getter]
    fn prime(&self) -> u64 {
        self.0.prime()
    }

    #[getter]
    fn exponent(&self) -> u32 {
        self.0.exponent()
    }

    fn to_residue(&self) -> PyResidue {
        PyResidue(self.0.to_residue())
    }

    fn __repr__(&self) -> String {
        format!(
            "ValuedResidue(unit={}, val={}, prime={}, exponent={})",
            self.0.unit(),
            self.0.val(),
            self.0.prime(),
            self.0.exponent()
        )
    }
}

/// Outcome of one congruence at one prime. `lhs`/`rhs` are `None` when
/// skipped.
#[pyclass(name = "CongruenceResult", module = "catcong", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCongruenceResult(cg::CongruenceResult);

#[pymethods]
impl PyCongruenceResult {
    /// Full id, e.g. `T31:0,1`.
    #[getter]
    fn id(&self) -> String {
        self.0.id.to_string()
    }

    #[getter]
    fn tag(&self) -> &'static str {
        self.0.id.tag()
    }

    #[getter]
    fn d(&self) -> Option<u8> {
        self.0.id.params().map(|(d, _)| d)
    }

    #[getter]
    fn delta(&self) -> Option<u8> {
        self.0.id.params().map(|(_, delta)| delta)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.0.modulus
    }

    #[getter]
    fn lhs(&self) -> Option<u64> {
        self.0.lhs.map(|r| r.value())
    }

    #[getter]
    fn rhs(&self) -> Option<u64> {
        self.0.rhs.map(|r| r.value())
    }

    #[getter]
    fn verdict(&self) -> &'static str {
        self.0.verdict.as_str()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    fn __repr__(&self) -> String {
        match (self.0.lhs, self.0.rhs) {
            (Some(l), Some(r)) => format!(
                "CongruenceResult({} p={} {} lhs={} rhs={} mod {})",
                self.0.id,
                self.0.p,
                self.0.verdict,
                l.value(),
                r.value(),
                self.0.modulus
            ),
            _ => format!(
                "CongruenceResult({} p={} {})",
                self.0.id, self.0.p, self.0.verdict
            ),
        }
    }
}

#[pyfunction]
fn mod_pow(base: i64, exp: u64, m: u64) -> PyResult<PyResidue> {
    catcong::modarith::mod_pow(base, exp, m)
        .map(PyResidue)
        .map_err(to_py)
}

#[pyfunction]
fn mod_inv(a: i128, m: u64) -> PyResult<PyResidue> {
    catcong::modarith::mod_inv(a, m).map(PyResidue).map_err(to_py)
}

#[pyfunction]
fn sign_half(p: u64) -> PyResult<i64> {
    catcong::modarith::sign_half(p).map_err(to_py)
}

#[pyfunction]
fn legendre3(a: i64) -> i64 {
    catcong::modarith::legendre3(a)
}

#[pyfunction]
fn sieve_primes(limit: u64) -> Vec<u64> {
    catcong::primes::sieve_primes(limit)
}

#[pyfunction]
fn is_prime(n: u64) -> bool {
    catcong::primes::is_prime(n)
}

#[pyfunction]
fn binom_exact(n: u64, k: i64) -> BigInt {
    catcong::binomial::binom_exact(n, k)
}

#[pyfunction]
fn binom_gen(a: i64, k: i64) -> BigInt {
    catcong::binomial::binom_gen(a, k)
}

#[pyfunction]
fn binom_mod_lucas(n: u64, k: u64, p: u64) -> PyResult<PyResidue> {
    if !catcong::primes::is_prime(p) {
        return Err(to_py(catcong::Error::NotPrime(p)));
    }
    Ok(PyResidue(catcong::binomial::binom_mod_lucas(n, k, p)))
}

#[pyfunction]
fn binom_mod_valued(n: u64, k: u64, p: u64, e: u32) -> PyResult<PyValuedResidue> {
    catcong::binomial::binom_mod_valued(n, k, p, e)
        .map(PyValuedResidue)
        .map_err(to_py)
}

/// `[C(3k+d, k) mod p for k in range(p)]`.
#[pyfunction]
fn binom_stream(d: u8, p: u64) -> PyResult<Vec<u64>> {
    let s = catcong::binomial::binom_stream(d, p).map_err(to_py)?;
    Ok(s.map(|r| r.value()).collect())
}

#[pyfunction]
fn catalan_order(n: u64, m: u64) -> PyResult<BigInt> {
    catcong::catalan::catalan_order(n, m).map_err(to_py)
}

#[pyfunction]
fn catalan2_mod(k: u64, p: u64) -> PyResult<PyResidue> {
    if !catcong::primes::is_prime(p) {
        return Err(to_py(catcong::Error::NotPrime(p)));
    }
    Ok(PyResidue(catcong::catalan::catalan2_mod(k, p)))
}

#[pyfunction]
fn lemma21_lhs(m: u64, n: u64) -> BigInt {
    catcong::identities::lemma21_lhs(m, n)
}

#[pyfunction]
fn lemma21_rhs(m: u64, n: u64) -> BigInt {
    catcong::identities::lemma21_rhs(m, n)
}

#[pyfunction]
fn poly_coeff(m: u64, n: u64) -> BigInt {
    catcong::identities::poly_coeff(m, n)
}

/// Every id in report order.
#[pyfunction]
fn ids() -> Vec<String> {
    cg::ALL_IDS.iter().map(|i| i.to_string()).collect()
}

#[pyfunction]
fn applicable(id: &str, p: u64) -> PyResult<bool> {
    Ok(cg::applicable(parse_id(id)?, p))
}

#[pyfunction]
fn lhs_value(id: &str, p: u64) -> PyResult<PyResidue> {
    cg::lhs_value(parse_id(id)?, p).map(PyResidue).map_err(to_py)
}

#[pyfunction]
fn rhs_value(id: &str, p: u64) -> PyResult<PyResidue> {
    cg::rhs_value(parse_id(id)?, p).map(PyResidue).map_err(to_py)
}

#[pyfunction]
fn check(id: &str, p: u64) -> PyResult<PyCongruenceResult> {
    cg::check(parse_id(id)?, p).map(PyCongruenceResult).map_err(to_py)
}

/// Checks a comma-separated id list (default `all`) at `p`.
#[pyfunction]
#[pyo3(signature = (p, ids = "all"))]
fn check_all(p: u64, ids: &str) -> PyResult<Vec<PyCongruenceResult>> {
    let ids = CongruenceId::parse_list(ids).map_err(to_py)?;
    let results = cg::check_all(p, Some(&ids)).map_err(to_py)?;
    Ok(results.into_iter().map(PyCongruenceResult).collect())
}

/// Sweeps `[min_prime, max_prime]`, releasing the GIL while working.
#[pyfunction]
#[pyo3(signature = (min_prime, max_prime, ids = "all", jobs = 1))]
fn sweep(
    py: Python<'_>,
    min_prime: u64,
    max_prime: u64,
    ids: &str,
    jobs: usize,
) -> PyResult<Vec<PyCongruenceResult>> {
    let ids = CongruenceId::parse_list(ids).map_err(to_py)?;
    let range = PrimeRange::new(min_prime, max_prime).map_err(to_py)?;
    let mut cfg = SweepConfig::new(range, ids);
    cfg.jobs = jobs.max(1);
    let results = py
        .detach(|| {
            let mut out = Vec::new();
            catcong::sweep::sweep(&cfg, |r| {
                out.extend(r.results.iter().copied());
                Ok(())
            })
            .map(|_| out)
        })
        .map_err(to_py)?;
    Ok(results.into_iter().map(PyCongruenceResult).collect())
}

#[pymodule(name = "catcong")]
pub fn catcong_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CatcongError", m.py().get_type::<CatcongError>())?;
    m.add_class::<PyResidue>()?;
    m.add_class::<PyValuedResidue>()?;
    m.add_class::<PyCongruenceResult>()?;
    m.add_function(wrap_pyfunction!(mod_pow, m)?)?;
    m.add_function(wrap_pyfunction!(mod_inv, m)?)?;
    m.add_function(wrap_pyfunction!(sign_half, m)?)?;
    m.add_function(wrap_pyfunction!(legendre3, m)?)?;
    m.add_function(wrap_pyfunction!(sieve_primes, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(binom_exact, m)?)?;
    m.add_function(wrap_pyfunction!(binom_gen, m)?)?;
    m.add_function(wrap_pyfunction!(binom_mod_lucas, m)?)?;
    m.add_function(wrap_pyfunction!(binom_mod_valued, m)?)?;
    m.add_function(wrap_pyfunction!(binom_stream, m)?)?;
    m.add_function(wrap_pyfunction!(catalan_order, m)?)?;
    m.add_function(wrap_pyfunction!(catalan2_mod, m)?)?;
    m.add_function(wrap_pyfunction!(lemma21_lhs, m)?)?;
    m.add_function(wrap_pyfunction!(lemma21_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(poly_coeff, m)?)?;
    m.add_function(wrap_pyfunction!(ids, m)?)?;
    m.add_function(wrap_pyfunction!(applicable, m)?)?;
    m.add_function(wrap_pyfunction!(lhs_value, m)?)?;
    m.add_function(wrap_pyfunction!(rhs_value, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(check_all, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
