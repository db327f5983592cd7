//! Python bindings: the main types and operations as one flat module.
//!
//! Weight vectors cross the boundary as exact `"p/q"` strings; readout
//! scores and activity vectors as floats. Build with `cargo build -p
//! ordseq-py`, then import the produced shared library as `ordseq_py`
//! (see `python/smoke_test.py`).

use std::collections::HashMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use ordseq_core::autoencoder::{self, Codebook, YPopulation, DEFAULT_THETA};
use ordseq_core::huffman;
use ordseq_core::rank::RankCode;
use ordseq_core::rational::{format_ratio, parse_ratio};
use ordseq_core::sequence::{Item, Sequence};
use ordseq_core::stdp;
use ordseq_core::tasks;
use ordseq_core::tree;
use ordseq_core::weights;
use ordseq_core::Error as CoreError;

fn py_err(e: CoreError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A sequence item coming from Python: number or token.
#[derive(FromPyObject)]
enum PyItem {
    #[pyo3(transparent)]
    Number(f64),
    #[pyo3(transparent)]
    Token(String),
}

impl From<PyItem> for Item {
    fn from(v: PyItem) -> Item {
        match v {
            PyItem::Number(x) => Item::Number(x),
            PyItem::Token(t) => Item::Token(t),
        }
    }
}

fn sequence(items: Vec<PyItem>) -> PyResult<Sequence> {
    Sequence::new(items.into_iter().map(Item::from).collect()).map_err(py_err)
}

fn rank(ranks: Vec<u32>) -> PyResult<RankCode> {
    RankCode::new(ranks).map_err(py_err)
}

fn item_to_py(py: Python<'_>, item: &Item) -> PyResult<Py<PyAny>> {
    Ok(match item {
        Item::Number(x) => x.into_pyobject(py)?.into_any().unbind(),
        Item::Token(t) => t.into_pyobject(py)?.into_any().unbind(),
    })
}

#[pyfunction]
fn rank_code(items: Vec<PyItem>) -> PyResult<Vec<u32>> {
    let seq = sequence(items)?;
    Ok(ordseq_core::rank_code(&seq).map_err(py_err)?.ranks().to_vec())
}

#[pyfunction]
fn stdp_weights(n: usize) -> PyResult<Vec<String>> {
    let w = weights::stdp_weights(n).map_err(py_err)?;
    Ok(w.weights().iter().map(format_ratio).collect())
}

#[pyfunction]
fn rank_order_weights(ranks: Vec<u32>) -> PyResult<Vec<String>> {
    let w = weights::rank_order_weights(&rank(ranks)?).map_err(py_err)?;
    Ok(w.weights().iter().map(format_ratio).collect())
}

#[pyfunction]
fn tree_order_weights(items: Vec<PyItem>) -> PyResult<Vec<String>> {
    let w = tree::tree_order_weights(&sequence(items)?).map_err(py_err)?;
    Ok(w.weights().iter().map(format_ratio).collect())
}

#[pyfunction]
fn response(input: Vec<u32>, stored: Vec<u32>) -> PyResult<f64> {
    weights::response(&rank(input)?, &rank(stored)?).map_err(py_err)
}

#[pyfunction]
fn tree_to_dyck(items: Vec<PyItem>) -> PyResult<String> {
    let t = tree::stack_order_tree(&sequence(items)?).map_err(py_err)?;
    Ok(tree::tree_to_dyck(&t).to_string())
}

#[pyfunction]
fn dyck_validate(word: &str) -> PyResult<bool> {
    tree::dyck_validate(word).map_err(py_err)
}

#[pyfunction]
fn is_stack_sortable(ranks: Vec<u32>) -> PyResult<bool> {
    Ok(tree::is_stack_sortable(&rank(ranks)?))
}

#[pyfunction]
fn structure_signature(tokens: Vec<PyItem>) -> PyResult<String> {
    let sig = tasks::structure_signature(&sequence(tokens)?).map_err(py_err)?;
    Ok(sig.as_str().to_string())
}

#[pyfunction]
fn same_structure(a: Vec<PyItem>, b: Vec<PyItem>) -> PyResult<bool> {
    Ok(tasks::same_structure(&sequence(a)?, &sequence(b)?))
}

/// Outcome of matching a template pattern against a token sequence.
#[pyclass(get_all)]
struct TemplateMatch {
    matched: bool,
    bindings: Option<HashMap<String, Py<PyAny>>>,
    violation_position: Option<usize>,
    degenerate: bool,
}

#[pyfunction]
#[pyo3(signature = (pattern, tokens, distinct = false))]
fn template_match(
    py: Python<'_>,
    pattern: &str,
    tokens: Vec<PyItem>,
    distinct: bool,
) -> PyResult<TemplateMatch> {
    let mut template = tasks::Template::from_pattern(pattern).map_err(py_err)?;
    if distinct {
        template = template.with_distinct_vars();
    }
    let seq = sequence(tokens)?;
    let (result, degenerate) = tasks::template_match(&template, &seq).map_err(py_err)?;
    Ok(match result {
        tasks::MatchResult::Match(bindings) => {
            let mut map = HashMap::new();
            for (var, item) in &bindings {
                map.insert(var.to_string(), item_to_py(py, item)?);
            }
            TemplateMatch {
                matched: true,
                bindings: Some(map),
                violation_position: None,
                degenerate,
            }
        }
        tasks::MatchResult::Violation { position } => TemplateMatch {
            matched: false,
            bindings: None,
            violation_position: Some(position),
            degenerate,
        },
    })
}

/// Simulate one task-set episode; returns (choices, rewards, strategy).
#[pyfunction]
#[pyo3(signature = (baited, first = "A", trials = 6))]
fn harlow_episode(baited: &str, first: &str, trials: usize) -> PyResult<(String, usize, String)> {
    let baited: tasks::Door = baited.parse().map_err(py_err)?;
    let first: tasks::Door = first.parse().map_err(py_err)?;
    let mut agent = tasks::TaskSetAgent::new(first);
    let log = tasks::harlow_episode(&mut agent, tasks::constant_env(baited), trials)
        .map_err(py_err)?;
    let strategy = match log.strategy {
        tasks::Strategy::Repeat => "repeat",
        tasks::Strategy::SwitchOnce => "switch-once",
    };
    Ok((log.choices(), log.rewards(), strategy.to_string()))
}

/// An ordinal Huffman codec.
#[pyclass]
struct HuffmanCodec {
    codec: huffman::Codec,
}

#[pymethods]
impl HuffmanCodec {
    /// Build from `{symbol: frequency}` where frequencies are ints or "p/q"
    /// strings.
    #[staticmethod]
    #[pyo3(signature = (freqs, arity = 2))]
    fn build(freqs: Vec<(String, PyItem)>, arity: u8) -> PyResult<Self> {
        let entries: Result<Vec<_>, PyErr> = freqs
            .into_iter()
            .map(|(sym, freq)| {
                let freq = match freq {
                    PyItem::Number(x) => {
                        if x.fract() != 0.0 || !x.is_finite() {
                            return Err(PyValueError::new_err(
                                "numeric frequencies must be integers; use \"p/q\" strings for rationals",
                            ));
                        }
                        parse_ratio(&format!("{}", x as i64)).map_err(py_err)?
                    }
                    PyItem::Token(s) => parse_ratio(&s).map_err(py_err)?,
                };
                Ok((sym, freq))
            })
            .collect();
        let table = huffman::SymbolTable::new(entries?).map_err(py_err)?;
        Ok(HuffmanCodec { codec: huffman::build_codec(&table, arity).map_err(py_err)? })
    }

    fn codeword(&self, symbol: &str) -> Option<Vec<u16>> {
        // Widened so the labels cross as a list of ints, not bytes.
        self.codec.codeword(symbol).map(|w| w.iter().map(|&l| u16::from(l)).collect())
    }

    fn encode(&self, symbols: Vec<String>) -> PyResult<Vec<u16>> {
        let labels = self.codec.encode(&symbols).map_err(py_err)?;
        Ok(labels.iter().map(|&l| u16::from(l)).collect())
    }

    fn decode(&self, labels: Vec<u8>) -> PyResult<Vec<String>> {
        self.codec.decode(&labels).map_err(py_err)
    }

    #[getter]
    fn arity(&self) -> u8 {
        self.codec.arity()
    }
}

/// An ordinal STDP network storing one rank code.
#[pyclass]
struct OrdinalNet {
    matrix: stdp::WeightMatrix,
}

#[pymethods]
impl OrdinalNet {
    #[new]
    #[pyo3(signature = (ranks, kernel = "const", units = None))]
    fn new(ranks: Vec<u32>, kernel: &str, units: Option<Vec<String>>) -> PyResult<Self> {
        let kernel = match kernel {
            "const" | "constant" => stdp::Kernel::Constant,
            "invdist" | "inverse-distance" => stdp::Kernel::InverseDistance,
            other => return Err(PyValueError::new_err(format!("unknown kernel {other:?}"))),
        };
        let code = rank(ranks)?;
        let matrix = match units {
            Some(units) => stdp::WeightMatrix::store_with_units(&code, units, kernel).map_err(py_err)?,
            None => stdp::WeightMatrix::store(&code, kernel),
        };
        Ok(OrdinalNet { matrix })
    }

    #[pyo3(signature = (active = None))]
    fn recall(&self, active: Option<Vec<String>>) -> PyResult<(Vec<String>, Vec<f64>)> {
        let result = match active {
            Some(cue) => self.matrix.recall(&cue).map_err(py_err)?,
            None => self.matrix.recall_all(),
        };
        Ok((result.order, result.scores))
    }

    fn perturb(&self, epsilon: f64, seed: u64) -> Self {
        OrdinalNet { matrix: self.matrix.perturb(epsilon, seed) }
    }

    fn noise_tolerance(&self) -> f64 {
        self.matrix.noise_tolerance()
    }

    fn units(&self) -> Vec<String> {
        self.matrix.units().to_vec()
    }

    fn weights(&self) -> Vec<Vec<f64>> {
        let n = self.matrix.len();
        (0..n).map(|i| (0..n).map(|j| self.matrix.weight(i, j)).collect()).collect()
    }
}

/// The rank-code sequence memory (Y population plus Z codebook).
#[pyclass]
struct SequenceMemory {
    population: YPopulation,
    book: Codebook,
}

#[pymethods]
impl SequenceMemory {
    #[new]
    #[pyo3(signature = (seed, k, n, theta = DEFAULT_THETA))]
    fn new(seed: u64, k: usize, n: usize, theta: f64) -> PyResult<Self> {
        let population = YPopulation::generate(seed, k, n).map_err(py_err)?;
        let book = Codebook::new(&population, theta);
        Ok(SequenceMemory { population, book })
    }

    fn encode(&self, items: Vec<PyItem>) -> PyResult<Vec<f64>> {
        autoencoder::encode(&sequence(items)?, &self.population).map_err(py_err)
    }

    /// Returns (z_id, novel).
    fn learn(&mut self, items: Vec<PyItem>) -> PyResult<(u32, bool)> {
        let (book, z, novel) =
            self.book.learn(&sequence(items)?, &self.population).map_err(py_err)?;
        self.book = book;
        Ok((z, novel))
    }

    /// Returns (z_id, similarity).
    fn recognize(&self, items: Vec<PyItem>) -> PyResult<(u32, f64)> {
        self.book.recognize(&sequence(items)?, &self.population).map_err(py_err)
    }

    fn decode(&self, py: Python<'_>, z: u32, bag: Vec<PyItem>) -> PyResult<Vec<Py<PyAny>>> {
        let bag: Vec<Item> = bag.into_iter().map(Item::from).collect();
        let seq = self.book.decode(z, &bag).map_err(py_err)?;
        seq.items().iter().map(|i| item_to_py(py, i)).collect()
    }

    fn __len__(&self) -> usize {
        self.book.len()
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.book.theta()
    }
}

#[pymodule]
fn ordseq_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_THETA", DEFAULT_THETA)?;
    m.add("MAX_EXACT_N", ordseq_core::MAX_EXACT_N)?;
    m.add_function(wrap_pyfunction!(rank_code, m)?)?;
    m.add_function(wrap_pyfunction!(stdp_weights, m)?)?;
    m.add_function(wrap_pyfunction!(rank_order_weights, m)?)?;
    m.add_function(wrap_pyfunction!(tree_order_weights, m)?)?;
    m.add_function(wrap_pyfunction!(response, m)?)?;
    m.add_function(wrap_pyfunction!(tree_to_dyck, m)?)?;
    m.add_function(wrap_pyfunction!(dyck_validate, m)?)?;
    m.add_function(wrap_pyfunction!(is_stack_sortable, m)?)?;
    m.add_function(wrap_pyfunction!(structure_signature, m)?)?;
    m.add_function(wrap_pyfunction!(same_structure, m)?)?;
    m.add_function(wrap_pyfunction!(template_match, m)?)?;
    m.add_function(wrap_pyfunction!(harlow_episode, m)?)?;
    m.add_class::<TemplateMatch>()?;
    m.add_class::<HuffmanCodec>()?;
    m.add_class::<OrdinalNet>()?;
    m.add_class::<SequenceMemory>()?;
    Ok(())
}
