//! Python bindings: finite groups, crossed modules, cat1-groups, Smith
//! normal form and the non-balanced certificate.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use xmodcat::cat1::{cat1_iso_via_xmod, cat1_to_cm, cm_to_cat1, Cat1Group};
use xmodcat::certify::{certify_nonbalanced, schur_multiplier_abelian};
use xmodcat::error::Error;
use xmodcat::group::FiniteGroup;
use xmodcat::lattice::{smith_normal_form, IntMatrix};
use xmodcat::xmod::{xmod_isomorphism, CrossedModule};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite group given by its multiplication table.
#[pyclass(name = "Group", skip_from_py_object)]
#[derive(Clone)]
struct PyGroup {
    inner: FiniteGroup,
}

#[pymethods]
impl PyGroup {
    /// Closure of permutation generators (1-based image arrays).
    #[staticmethod]
    fn from_permutations(degree: usize, generators: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyGroup {
            inner: FiniteGroup::from_permutations(degree, &generators).map_err(err)?,
        })
    }

    /// Direct sum of cyclic groups with the given invariant factors.
    #[staticmethod]
    fn abelian(factors: Vec<u64>) -> PyResult<Self> {
        Ok(PyGroup {
            inner: FiniteGroup::abelian_from_invariants(&factors).map_err(err)?,
        })
    }

    #[staticmethod]
    fn cyclic(n: usize) -> Self {
        PyGroup {
            inner: FiniteGroup::cyclic(n),
        }
    }

    #[staticmethod]
    fn dihedral(n: usize) -> Self {
        PyGroup {
            inner: FiniteGroup::dihedral(n),
        }
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.mul(a, b)
    }

    fn inv(&self, a: usize) -> usize {
        self.inner.inv(a)
    }

    fn element_order(&self, a: usize) -> usize {
        self.inner.element_order(a)
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    /// Invariant factors (abelian groups only).
    fn abelian_invariants(&self) -> PyResult<Vec<u64>> {
        if !self.inner.is_abelian() {
            return Err(PyValueError::new_err("group is not abelian"));
        }
        Ok(self.inner.abelian_invariants())
    }

    fn derived_subgroup(&self) -> Vec<usize> {
        self.inner.derived_subgroup()
    }

    fn __repr__(&self) -> String {
        format!("Group(order={})", self.inner.order())
    }
}

/// A crossed module with exhaustively validated axioms.
#[pyclass(name = "CrossedModule", skip_from_py_object)]
#[derive(Clone)]
struct PyCrossedModule {
    inner: CrossedModule,
}

#[pymethods]
impl PyCrossedModule {
    /// `(G, G, id)` with the conjugation action.
    #[staticmethod]
    fn conjugation(g: &PyGroup) -> Self {
        PyCrossedModule {
            inner: CrossedModule::conjugation(&g.inner),
        }
    }

    /// `(M, 1, 0)` for an abelian group.
    #[staticmethod]
    fn point_module(m: &PyGroup) -> PyResult<Self> {
        Ok(PyCrossedModule {
            inner: CrossedModule::point_module(&m.inner).map_err(err)?,
        })
    }

    fn top_order(&self) -> usize {
        self.inner.top().order()
    }

    fn base_order(&self) -> usize {
        self.inner.base().order()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    /// The associated cat1-group.
    fn to_cat1(&self) -> PyCat1Group {
        PyCat1Group {
            inner: cm_to_cat1(&self.inner).cat1,
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "CrossedModule(|T|={}, |G|={})",
            self.inner.top().order(),
            self.inner.base().order()
        )
    }
}

/// A cat1-group with validated axioms.
#[pyclass(name = "Cat1Group", skip_from_py_object)]
#[derive(Clone)]
struct PyCat1Group {
    inner: Cat1Group,
}

#[pymethods]
impl PyCat1Group {
    fn order(&self) -> usize {
        self.inner.group().order()
    }

    /// The associated crossed module `(ker d0, im d1, d1|)`.
    fn to_crossed_module(&self) -> PyCrossedModule {
        PyCrossedModule {
            inner: cat1_to_cm(&self.inner).xmod,
        }
    }

    fn __repr__(&self) -> String {
        format!("Cat1Group(order={})", self.inner.group().order())
    }
}

/// Whether two crossed modules are isomorphic (search over compatible pairs
/// of group isomorphisms).
#[pyfunction]
fn isomorphic(a: &PyCrossedModule, b: &PyCrossedModule) -> bool {
    xmod_isomorphism(&a.inner, &b.inner).is_some()
}

/// Whether two cat1-groups are isomorphic.
#[pyfunction]
fn cat1_isomorphic(a: &PyCat1Group, b: &PyCat1Group) -> bool {
    cat1_iso_via_xmod(&a.inner, &b.inner).is_some()
}

/// Smith normal form of an integer matrix: returns `(U, D, V)` with
/// `U @ A @ V == D`, `U`, `V` unimodular and the diagonal of `D` a
/// divisibility chain.
#[pyfunction]
fn snf(py: Python<'_>, matrix: Vec<Vec<BigInt>>) -> PyResult<Py<PyAny>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    if matrix.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    let a = IntMatrix::from_fn(rows, cols, |i, j| matrix[i][j].clone());
    let f = smith_normal_form(&a);
    let to_py = |m: &IntMatrix| -> Vec<Vec<BigInt>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
            .collect()
    };
    let out = PyList::new(py, [to_py(&f.u), to_py(&f.d), to_py(&f.v)])?;
    Ok(out.into_any().unbind())
}

/// Multiplier of a finite abelian group by the pairwise-gcd formula, as a
/// display string like `"Z/2 + Z/4"` (`"0"` for trivial).
#[pyfunction]
fn h2(invariants: Vec<u64>) -> PyResult<String> {
    if invariants.iter().any(|&f| f < 2) {
        return Err(PyValueError::new_err("invariant factors must be >= 2"));
    }
    Ok(schur_multiplier_abelian(&invariants).to_string())
}

/// Run the non-balanced certificate pipeline. Returns a dict with keys
/// `m`, `rank`, `schreier_count`, `n_mod_tn`, `ker_j`, `h2`, `verdict` and
/// `witness` (a dict or None).
#[pyfunction]
fn certify(py: Python<'_>, invariants: Vec<u64>, rank: usize) -> PyResult<Py<PyDict>> {
    let cert = certify_nonbalanced(&invariants, rank).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("m", &cert.report.m_invariants)?;
    d.set_item("rank", cert.report.rank)?;
    d.set_item("schreier_count", cert.report.schreier_count)?;
    d.set_item("n_mod_tn", cert.report.n_mod_tn.to_string())?;
    d.set_item("ker_j", cert.report.ker_j.to_string())?;
    d.set_item("h2", cert.report.h2_oracle.to_string())?;
    d.set_item("verdict", cert.report.verdict.to_string())?;
    match &cert.witness {
        Some(w) => {
            let wd = PyDict::new(py);
            wd.set_item("exponents", w.exponents.clone())?;
            wd.set_item("order", w.order.clone())?;
            wd.set_item("word", w.word.to_string())?;
            d.set_item("witness", wd)?;
        }
        None => d.set_item("witness", py.None())?,
    }
    Ok(d.unbind())
}

/// Certificate as a stable JSON string.
#[pyfunction]
fn certify_json(invariants: Vec<u64>, rank: usize) -> PyResult<String> {
    Ok(certify_nonbalanced(&invariants, rank)
        .map_err(err)?
        .to_json())
}

#[pymodule]
fn xmodcat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_class::<PyCrossedModule>()?;
    m.add_class::<PyCat1Group>()?;
    m.add_function(wrap_pyfunction!(isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(cat1_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(snf, m)?)?;
    m.add_function(wrap_pyfunction!(h2, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(certify_json, m)?)?;
    Ok(())
}
