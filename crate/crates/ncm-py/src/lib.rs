//! Python bindings for the noncrossing M-clique operad library.
//!
//! The module exposes the magma, clique, and syntax-tree types as classes,
//! and the certificate pipelines (confluence, Koszul ranks, Hilbert series,
//! named constructions, algebra checks) as functions returning JSON strings.

use ncm::algebra::{relations_check, OmegaFamily};
use ncm::clique::enumerate_noncrossing;
use ncm::constructions::named_construction;
use ncm::freeop::SyntaxTree;
use ncm::koszul::koszul_certificate;
use ncm::rewrite::{confluence_report, relation_space_rank, RewriteEngine};
use ncm::series::{dim_ncm, dim_ncm_dual, koszul_series_check};
use ncm::{MClique, Magma as CoreMagma};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::json;

fn err(e: String) -> PyErr {
    PyValueError::new_err(e)
}

/// A finite unitary magma (or the integers), parsed from a spec string.
#[pyclass(name = "Magma")]
#[derive(Clone)]
struct PyMagma {
    spec: String,
    inner: CoreMagma,
}

#[pymethods]
impl PyMagma {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let inner = CoreMagma::parse_spec(spec).map_err(err)?;
        Ok(PyMagma {
            spec: spec.to_string(),
            inner,
        })
    }

    #[getter]
    fn spec(&self) -> String {
        self.spec.clone()
    }

    fn card(&self) -> usize {
        self.inner.card()
    }

    fn unit(&self) -> String {
        self.inner.name(self.inner.unit()).to_string()
    }

    fn elements(&self) -> Vec<String> {
        self.inner
            .elements()
            .into_iter()
            .map(|x| self.inner.name(x).to_string())
            .collect()
    }

    fn op(&self, x: &str, y: &str) -> PyResult<String> {
        let a = self.inner.label_of(x).map_err(err)?;
        let b = self.inner.label_of(y).map_err(err)?;
        Ok(self.inner.name(self.inner.op(a, b)).to_string())
    }

    fn is_associative(&self) -> bool {
        self.inner.is_associative()
    }

    /// All noncrossing M-cliques of the given arity.
    fn enumerate(&self, arity: usize) -> PyResult<Vec<PyClique>> {
        let cliques = enumerate_noncrossing(&self.inner, arity).map_err(err)?;
        Ok(cliques
            .into_iter()
            .map(|c| PyClique {
                magma: self.clone(),
                inner: c,
            })
            .collect())
    }

    fn clique_from_json(&self, text: &str) -> PyResult<PyClique> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
        let inner = MClique::from_json(&self.inner, &v).map_err(err)?;
        Ok(PyClique {
            magma: self.clone(),
            inner,
        })
    }

    fn tree_from_json(&self, text: &str) -> PyResult<PyTree> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
        let inner = SyntaxTree::from_json(&self.inner, &v).map_err(err)?;
        Ok(PyTree {
            magma: self.clone(),
            inner,
        })
    }

    fn __repr__(&self) -> String {
        format!("Magma({:?})", self.spec)
    }
}

/// A noncrossing M-clique over a fixed magma.
#[pyclass(name = "Clique")]
#[derive(Clone)]
struct PyClique {
    magma: PyMagma,
    inner: MClique,
}

#[pymethods]
impl PyClique {
    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity
    }

    /// Labelled arcs as `(i, j, name)` triples, unit arcs omitted.
    fn arcs(&self) -> Vec<(usize, usize, String)> {
        self.inner
            .arcs
            .iter()
            .map(|(&(i, j), &l)| (i, j, self.magma.inner.name(l).to_string()))
            .collect()
    }

    fn solid_diagonals(&self) -> Vec<(usize, usize)> {
        self.inner.solid_diagonals()
    }

    fn is_bubble(&self) -> bool {
        self.inner.is_bubble()
    }

    fn compose(&self, pos: usize, other: &PyClique) -> PyResult<PyClique> {
        if pos < 1 || pos > self.inner.arity {
            return Err(err(format!(
                "position {pos} out of range for arity {}",
                self.inner.arity
            )));
        }
        Ok(PyClique {
            magma: self.magma.clone(),
            inner: self.inner.compose(&self.magma.inner, pos, &other.inner),
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json(&self.magma.inner, &self.magma.spec).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Clique({})", self.to_json())
    }

    fn __eq__(&self, other: &PyClique) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        use std::collections::hash_map::DefaultHasher;
        use std::hash::{Hash, Hasher};
        let mut h = DefaultHasher::new();
        self.inner.hash(&mut h);
        h.finish()
    }
}

/// A syntax tree over the corolla generators of a fixed magma.
#[pyclass(name = "Tree")]
#[derive(Clone)]
struct PyTree {
    magma: PyMagma,
    inner: SyntaxTree,
}

#[pymethods]
impl PyTree {
    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    /// Evaluate the tree to the clique it presents.
    fn ev(&self) -> PyClique {
        PyClique {
            magma: self.magma.clone(),
            inner: self.inner.ev(&self.magma.inner),
        }
    }

    /// Leftmost-innermost normal form under the rewrite rule.
    fn normal_form(&self) -> PyTree {
        let engine = RewriteEngine::new(&self.magma.inner);
        PyTree {
            magma: self.magma.clone(),
            inner: engine.normal_form(&self.inner),
        }
    }

    fn is_normal_form(&self) -> bool {
        RewriteEngine::new(&self.magma.inner).is_normal_form(&self.inner)
    }

    fn to_json(&self) -> String {
        self.inner.to_json(&self.magma.inner).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Tree({})", self.to_json())
    }

    fn __eq__(&self, other: &PyTree) -> bool {
        self.inner == other.inner
    }
}

/// Dimension table (by closed formula) for arities 1..=upto.
#[pyfunction]
#[pyo3(signature = (m, upto, dual = false))]
fn dims(m: u64, upto: usize, dual: bool) -> Vec<String> {
    (1..=upto as u64)
        .map(|n| {
            if dual {
                dim_ncm_dual(m, n).to_string()
            } else {
                dim_ncm(m, n).to_string()
            }
        })
        .collect()
}

/// Rank of the quadratic relation space for the given magma spec.
#[pyfunction]
fn relation_rank(spec: &str) -> PyResult<usize> {
    let m = CoreMagma::parse_spec(spec).map_err(err)?;
    relation_space_rank(&m).map_err(err)
}

/// Koszul rank certificate as a JSON string.
#[pyfunction]
fn koszul(spec: &str) -> PyResult<String> {
    let m = CoreMagma::parse_spec(spec).map_err(err)?;
    let cert = koszul_certificate(&m).map_err(err)?;
    Ok(cert.to_json().to_string())
}

/// Confluence certificate at bounded arity as a JSON string.
#[pyfunction]
fn confluence(spec: &str, max_arity: usize) -> PyResult<String> {
    let m = CoreMagma::parse_spec(spec).map_err(err)?;
    let report = confluence_report(&m, max_arity).map_err(err)?;
    Ok(report.to_json().to_string())
}

/// Hilbert-series identity check `H(-H!(-t)) = t` as a JSON string.
#[pyfunction]
#[pyo3(signature = (m, order = 8))]
fn series(m: u64, order: usize) -> PyResult<String> {
    let cert = koszul_series_check(m, order).map_err(err)?;
    Ok(json!({
        "m": cert.m,
        "order": cert.order,
        "identity_holds": cert.identity_holds,
        "dims_match": cert.dims_match,
        "dual_dims_match": cert.dual_dims_match,
        "passed": cert.passed(),
    })
    .to_string())
}

/// Certificate for a named construction as a JSON string.
#[pyfunction]
#[pyo3(signature = (name, nmax = None))]
fn construct(name: &str, nmax: Option<usize>) -> PyResult<String> {
    let c = named_construction(name).map_err(err)?;
    let bound = nmax.unwrap_or(c.expected_dims.len());
    let report = c.certify(bound).map_err(err)?;
    Ok(report.to_json().to_string())
}

/// Sample-based algebra relation check on a shipped carrier.
///
/// `carrier` is one of `"monoid:<magma spec>"`, `"select:<l>"`, `"constant"`.
#[pyfunction]
#[pyo3(signature = (carrier, samples = 100, seed = 2024))]
fn algebra_check(carrier: &str, samples: usize, seed: u64) -> PyResult<String> {
    let (magma, kind): (CoreMagma, String) = match carrier.split_once(':') {
        Some(("monoid", spec)) => (CoreMagma::parse_spec(spec).map_err(err)?, "monoid".into()),
        Some(("select", l)) => {
            let l: usize = l.parse().map_err(|e| err(format!("bad parameter: {e}")))?;
            (CoreMagma::builtin_s(l), format!("select:{l}"))
        }
        None if carrier == "constant" => (CoreMagma::builtin_d0(), "constant".into()),
        _ => {
            return Err(err(format!(
                "unknown carrier {carrier:?}; use monoid:<magma>, select:<l>, or constant"
            )))
        }
    };
    let family = match kind.as_str() {
        "monoid" => OmegaFamily::monoid_words(&magma).map_err(err)?,
        "constant" => OmegaFamily::constant_term(&magma).map_err(err)?,
        _ => {
            let l = kind["select:".len()..].parse::<usize>().unwrap();
            OmegaFamily::selected_concatenation(&magma, l).map_err(err)?
        }
    };
    let omega_violations = family.validate(samples, seed);
    let report = relations_check(&family, samples, seed);
    let mut v = report.to_json();
    v["omega_violations"] = json!(omega_violations);
    v["passed"] = json!(report.passed() && omega_violations.is_empty());
    Ok(v.to_string())
}

#[pymodule]
fn ncm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMagma>()?;
    m.add_class::<PyClique>()?;
    m.add_class::<PyTree>()?;
    m.add_function(wrap_pyfunction!(dims, m)?)?;
    m.add_function(wrap_pyfunction!(relation_rank, m)?)?;
    m.add_function(wrap_pyfunction!(koszul, m)?)?;
    m.add_function(wrap_pyfunction!(confluence, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(algebra_check, m)?)?;
    Ok(())
}
