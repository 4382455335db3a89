//! CNF encoding of constrained k-colourability, DIMACS emission, and model
//! decoding, so independent SAT solvers can reproduce the native verdicts.
//!
//! Variable numbering: vertex v (0-based), colour c (1-based) map to
//! v·k + c. At-most-one-colour clauses are deliberately omitted; a model may
//! assert several colours on a vertex and decoding projects to the lowest,
//! which still satisfies every clause class we emit (they are all negative
//! apart from at-least-one and the fix units).

use crate::graph::UnitDistanceGraph;
use crate::solver::{validate_colouring, Colouring, ColouringError, Constraint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub vertex_count: usize,
    pub k: u8,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn num_vars(&self) -> usize {
        self.vertex_count * self.k as usize
    }

    /// DIMACS variable for vertex v taking colour c.
    pub fn var(&self, v: u32, c: u8) -> i32 {
        debug_assert!((v as usize) < self.vertex_count);
        debug_assert!(c >= 1 && c <= self.k);
        v as i32 * self.k as i32 + c as i32
    }
}

/// Builds the colouring formula with a fixed, reproducible clause order:
/// at-least-one per vertex, then per-edge-per-colour exclusions, then the
/// constraint clauses in input order.
pub fn encode(g: &UnitDistanceGraph, k: u8, constraints: &[Constraint]) -> CnfFormula {
    assert!(k >= 1, "at least one colour required");
    let n = g.vertex_count();
    let var = |v: u32, c: u8| v as i32 * k as i32 + c as i32;
    let mut clauses = Vec::new();
    for v in 0..n as u32 {
        clauses.push((1..=k).map(|c| var(v, c)).collect());
    }
    for &(u, v) in g.edges() {
        for c in 1..=k {
            clauses.push(vec![-var(u, c), -var(v, c)]);
        }
    }
    for con in constraints {
        match con {
            Constraint::FixColour { vertex, colour } => {
                assert!((*vertex as usize) < n && *colour >= 1 && *colour <= k);
                clauses.push(vec![var(*vertex, *colour)]);
            }
            Constraint::ForbidMonoTriple { vertices } => {
                for c in 1..=k {
                    clauses.push(vertices.iter().map(|&v| -var(v, c)).collect());
                }
            }
            Constraint::RequireNonMono { vertices } => {
                for c in 1..=k {
                    clauses.push(vertices.iter().map(|&v| -var(v, c)).collect());
                }
            }
        }
    }
    CnfFormula {
        vertex_count: n,
        k,
        clauses,
    }
}

/// Standard DIMACS text, byte-reproducible for a given formula.
pub fn emit_dimacs(f: &CnfFormula) -> String {
    let mut out = String::new();
    out.push_str(&format!("p cnf {} {}\n", f.num_vars(), f.clauses.len()));
    for clause in &f.clauses {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DecodeError {
    #[error("literal {0} references a variable beyond the formula")]
    LiteralOutOfRange(i32),
    #[error("model does not satisfy clause {index}")]
    ModelUnsatisfying { index: usize },
    #[error("decoded colouring fails validation: {0}")]
    Validation(#[from] ColouringError),
}

/// Projects a satisfying model to a colouring: the lowest asserted colour
/// per vertex. The model is checked against the formula first, and the
/// decoded colouring is re-validated against the graph and constraints, so
/// an encoder defect cannot slip through.
pub fn decode_model(
    g: &UnitDistanceGraph,
    f: &CnfFormula,
    constraints: &[Constraint],
    model: &[i32],
) -> Result<Colouring, DecodeError> {
    let num_vars = f.num_vars();
    let mut assignment = vec![false; num_vars + 1];
    for &lit in model {
        let var = lit.unsigned_abs() as usize;
        if var == 0 || var > num_vars {
            return Err(DecodeError::LiteralOutOfRange(lit));
        }
        assignment[var] = lit > 0;
    }
    for (index, clause) in f.clauses.iter().enumerate() {
        let satisfied = clause.iter().any(|&lit| {
            let value = assignment[lit.unsigned_abs() as usize];
            (lit > 0) == value
        });
        if !satisfied {
            return Err(DecodeError::ModelUnsatisfying { index });
        }
    }
    let mut colours = Vec::with_capacity(f.vertex_count);
    for v in 0..f.vertex_count as u32 {
        let c = (1..=f.k)
            .find(|&c| assignment[f.var(v, c) as usize])
            .expect("at-least-one clause held");
        colours.push(c);
    }
    let colouring = Colouring(colours);
    validate_colouring(g, f.k, &colouring, constraints)?;
    Ok(colouring)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverVerdict {
    Satisfiable(Vec<i32>),
    Unsatisfiable,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseOutputError {
    #[error("no solution line (\"s SATISFIABLE\" or \"s UNSATISFIABLE\") found")]
    MissingStatus,
    #[error("solver reported {0:?}")]
    UnusableStatus(String),
    #[error("malformed literal {0:?} in model line")]
    BadLiteral(String),
}

/// Parses standard SAT-competition output: an "s" status line and, for
/// satisfiable runs, "v" lines carrying the model, terminated by 0.
pub fn parse_solver_output(text: &str) -> Result<SolverVerdict, ParseOutputError> {
    let mut status: Option<String> = None;
    let mut model = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("v ") {
            for token in rest.split_whitespace() {
                let lit: i32 = token
                    .parse()
                    .map_err(|_| ParseOutputError::BadLiteral(token.to_string()))?;
                if lit != 0 {
                    model.push(lit);
                }
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") => Ok(SolverVerdict::Satisfiable(model)),
        Some("UNSATISFIABLE") => Ok(SolverVerdict::Unsatisfiable),
        Some(other) => Err(ParseOutputError::UnusableStatus(other.to_string())),
        None => Err(ParseOutputError::MissingStatus),
    }
}
