use pyo3::exceptions::{PyMemoryError, PyValueError};
use pyo3::prelude::*;

use homfold_core::fold::{first_arg_plan, second_arg_plan, FoldCollapsePlan};
use homfold_core::{self as core, Ambient, Coefficients, Error, FoldWitness, Poset};

fn err(e: Error) -> PyErr {
    match e {
        Error::ResourceLimit { .. } | Error::TooLarge { .. } | Error::Overflow => PyMemoryError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn coefficients(name: &str) -> PyResult<Coefficients> {
    name.parse().map_err(|e: String| PyValueError::new_err(e))
}

/// Finite simple graph, loops allowed.
#[pyclass(module = "homfold", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Graph(core::Graph);

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        core::Graph::from_edges(n, &edges).map(Graph).map_err(err)
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Graph(core::Graph::complete(n))
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Graph(core::Graph::path(n))
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        core::parse_graph(text).map(Graph).map_err(err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.0.n() && b < self.0.n() && self.0.has_edge(a, b)
    }

    /// All fold witnesses `(v, u)` with `N(u) ⊇ N(v)`.
    fn find_folds(&self) -> Vec<(usize, usize)> {
        self.0.find_folds().iter().map(|w| (w.v, w.u)).collect()
    }

    fn is_stiff(&self) -> bool {
        self.0.is_stiff()
    }

    /// Deletes `v`; returns the folded graph and the old-to-new relabeling.
    #[pyo3(signature = (v, u = None))]
    fn apply_fold(&self, v: usize, u: Option<usize>) -> PyResult<(Graph, Vec<Option<usize>>)> {
        let w = witness(&self.0, v, u)?;
        let fold = self.0.apply_fold(w).map_err(err)?;
        Ok((Graph(fold.folded), fold.relabel))
    }

    fn fold_to_stiff(&self) -> Graph {
        Graph(self.0.fold_to_stiff())
    }

    fn __eq__(&self, other: &Graph) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, edges={:?})", self.0.n(), self.0.edges())
    }
}

fn witness(g: &core::Graph, v: usize, u: Option<usize>) -> PyResult<FoldWitness> {
    let w = match u {
        Some(u) => FoldWitness { v, u },
        None => g.fold_for(v).map_err(err)?,
    };
    g.check_witness(w).map_err(err)?;
    Ok(w)
}

/// The cells of Hom(G, H) with their face poset.
#[pyclass(module = "homfold", frozen)]
struct HomComplex(core::HomComplex);

#[pymethods]
impl HomComplex {
    #[new]
    #[pyo3(signature = (g, h, max_cells = core::DEFAULT_MAX_CELLS))]
    fn new(py: Python<'_>, g: &Graph, h: &Graph, max_cells: usize) -> PyResult<Self> {
        let (g, h) = (g.0.clone(), h.0.clone());
        py.detach(|| core::HomComplex::enumerate(&g, &h, max_cells)).map(HomComplex).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn f_vector(&self) -> Vec<usize> {
        self.0.f_vector()
    }

    /// Each cell as a list of sorted vertex lists, one per vertex of G.
    fn cells(&self) -> Vec<Vec<Vec<usize>>> {
        self.0
            .cells()
            .iter()
            .map(|c| c.sets().iter().map(|&s| (0..64).filter(|&b| s >> b & 1 == 1).collect()).collect())
            .collect()
    }

    /// Ordinary homomorphisms, the 0-cells.
    fn vertices(&self) -> Vec<Vec<usize>> {
        self.0.vertices()
    }

    /// Cover pairs `(face, coface)` by cell index.
    fn covers(&self) -> Vec<(usize, usize)> {
        (0..self.0.len()).flat_map(|i| self.0.upper_covers(i).iter().map(move |&j| (i, j))).collect()
    }

    /// Betti numbers; cellular unless `subdivide` asks for the order complex.
    #[pyo3(signature = (coefficients = "gf2", subdivide = false))]
    fn betti(&self, py: Python<'_>, coefficients: &str, subdivide: bool) -> PyResult<Vec<usize>> {
        let c = self::coefficients(coefficients)?;
        let b = py.detach(|| {
            if subdivide {
                core::betti(&core::order_complex(self.0.poset()), c)
            } else {
                core::ChainComplex::cellular(&self.0, None).betti(c)
            }
        });
        Ok(b.map_err(err)?.betti)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_json()).expect("serializable")
    }
}

/// Outcome of executing a fold collapse plan.
#[pyclass(module = "homfold", frozen, get_all)]
struct Verdict {
    valid: bool,
    failed_step: Option<usize>,
    euler_invariant: bool,
    betti_before: Vec<usize>,
    betti_after: Vec<usize>,
    remaining_matches: bool,
    steps: usize,
}

#[pymethods]
impl Verdict {
    fn all_pass(&self) -> bool {
        self.valid && self.remaining_matches && self.euler_invariant && self.betti_before == self.betti_after
    }

    fn __repr__(&self) -> String {
        format!(
            "Verdict(valid={}, failed_step={:?}, euler_invariant={}, betti_before={:?}, betti_after={:?}, remaining_matches={})",
            self.valid, self.failed_step, self.euler_invariant, self.betti_before, self.betti_after, self.remaining_matches
        )
    }
}

fn plan_for(hom: &core::HomComplex, w: FoldWitness, side: &str, order: Option<Vec<usize>>) -> PyResult<FoldCollapsePlan> {
    match side {
        "first" => first_arg_plan(hom, w).map_err(err),
        "second" => {
            let order = order.unwrap_or_else(|| (0..hom.source().n()).collect());
            second_arg_plan(hom, w, &order).map_err(err)
        }
        other => Err(PyValueError::new_err(format!("side must be `first` or `second`, got `{other}`"))),
    }
}

fn hom_for(g: &Graph, h: &Graph, side: &str, max_cells: usize) -> PyResult<core::HomComplex> {
    let (src, dst) = if side == "second" { (&h.0, &g.0) } else { (&g.0, &h.0) };
    core::HomComplex::enumerate(src, dst, max_cells).map_err(err)
}

/// Collapse plan JSON for folding `v` out of `g`: on Hom(g, h) for the first
/// side, on Hom(h, g) for the second.
#[pyfunction]
#[pyo3(signature = (g, h, v, u = None, side = "first", order = None, max_cells = core::DEFAULT_MAX_CELLS))]
fn collapse_plan(g: &Graph, h: &Graph, v: usize, u: Option<usize>, side: &str, order: Option<Vec<usize>>, max_cells: usize) -> PyResult<String> {
    let w = witness(&g.0, v, u)?;
    let hom = hom_for(g, h, side, max_cells)?;
    let plan = plan_for(&hom, w, side, order)?;
    Ok(serde_json::to_string(&plan).expect("serializable"))
}

/// Builds the plan for folding `v` out of `g`, executes it and checks the result.
#[pyfunction]
#[pyo3(signature = (g, h, v, u = None, side = "first", order = None, coefficients = "gf2", max_cells = core::DEFAULT_MAX_CELLS))]
#[allow(clippy::too_many_arguments)]
fn verify_fold(
    py: Python<'_>,
    g: &Graph,
    h: &Graph,
    v: usize,
    u: Option<usize>,
    side: &str,
    order: Option<Vec<usize>>,
    coefficients: &str,
    max_cells: usize,
) -> PyResult<Verdict> {
    let c = self::coefficients(coefficients)?;
    let w = witness(&g.0, v, u)?;
    let hom = hom_for(g, h, side, max_cells)?;
    let plan = plan_for(&hom, w, side, order)?;
    let v = py
        .detach(|| {
            if side == "first" {
                let bd = core::order_complex(hom.poset());
                core::compare_collapse_with(Ambient::Simplicial(&bd), &plan.sequence, &plan.retained, c)
            } else {
                core::compare_collapse_with(Ambient::Hom(&hom), &plan.sequence, &plan.retained, c)
            }
        })
        .map_err(err)?;
    Ok(Verdict {
        valid: v.valid,
        failed_step: v.failed_step,
        euler_invariant: v.euler_invariant,
        betti_before: v.betti_before,
        betti_after: v.betti_after,
        remaining_matches: v.remaining_matches,
        steps: plan.sequence.len(),
    })
}

/// The disconnected-graphs poset on `n` vertices as JSON, and its closure map
/// as `(x, phi(x))` id pairs.
#[pyfunction]
fn disconnected_graph_fixture(n: usize) -> PyResult<(String, Vec<(u32, u32)>)> {
    let (p, phi) = core::disconnected_graph_fixture(n).map_err(err)?;
    Ok((serde_json::to_string(&p.to_json()).expect("serializable"), phi.pairs(&p)))
}

/// Betti numbers of the order complex of a poset given as JSON.
#[pyfunction]
#[pyo3(signature = (poset_json, coefficients = "gf2"))]
fn poset_betti(poset_json: &str, coefficients: &str) -> PyResult<Vec<usize>> {
    let json = serde_json::from_str(poset_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let p = core::FacePoset::from_json(json).map_err(err)?;
    Ok(core::betti(&core::order_complex(&p), self::coefficients(coefficients)?).map_err(err)?.betti)
}

#[pymodule]
fn homfold(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<HomComplex>()?;
    m.add_class::<Verdict>()?;
    m.add_function(wrap_pyfunction!(collapse_plan, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fold, m)?)?;
    m.add_function(wrap_pyfunction!(disconnected_graph_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(poset_betti, m)?)?;
    Ok(())
}
