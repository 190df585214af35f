//! Named verification checks and critical-group methods, looked up by name.

use std::fmt;

use crate::critical::{critical_group, critical_group_via_laplacian, AdjointPair, CriticalError};
use crate::lattice::FpAbelianGroup;
use crate::symmetry::{FactorizationReport, Hypotheses};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The hypotheses the check depends on do not hold.
    NotApplicable,
}

impl CheckStatus {
    pub fn label(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::NotApplicable => "n/a",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub trait Check: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn evaluate(&self, report: &FactorizationReport) -> CheckStatus;
}

/// A check built from a hypothesis gate and a predicate.
pub struct PredicateCheck {
    pub name: &'static str,
    pub description: &'static str,
    pub applies: fn(&Hypotheses) -> bool,
    pub holds: fn(&FactorizationReport) -> bool,
}

impl Check for PredicateCheck {
    fn name(&self) -> &'static str {
        self.name
    }

    fn description(&self) -> &'static str {
        self.description
    }

    fn evaluate(&self, report: &FactorizationReport) -> CheckStatus {
        if !(self.applies)(&report.hypotheses) {
            CheckStatus::NotApplicable
        } else if (self.holds)(report) {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("`{0}` is already registered")]
    Duplicate(String),
    #[error("unknown name `{0}`; known: {1}")]
    Unknown(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub status: CheckStatus,
}

#[derive(Default)]
pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

fn always(_: &Hypotheses) -> bool {
    true
}

fn ratio_gate(h: &Hypotheses) -> bool {
    h.ratio_applies()
}

fn fixed_forest_gate(h: &Hypotheses) -> bool {
    h.fixed_forest()
}

fn forest_gate(h: &Hypotheses) -> bool {
    h.forest_applies()
}

impl CheckRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every check the analysis knows about, in report order.
    pub fn standard() -> Self {
        let table: [PredicateCheck; 17] = [
            PredicateCheck {
                name: "lattice-preservation",
                description: "f and its transpose map cycles to cycles and bonds to bonds",
                applies: always,
                holds: |r| r.preservation.passed(),
            },
            PredicateCheck {
                name: "laplacian-presentation",
                description:
                    "quotient and Laplacian presentations agree, with order equal to the forest count",
                applies: always,
                holds: |r| r.laplacian_agrees(),
            },
            PredicateCheck {
                name: "two-torsion",
                description: "kernels and cokernels of f* and (f^t)* are killed by 2",
                applies: always,
                holds: |r| r.torsion.passed(),
            },
            PredicateCheck {
                name: "duality",
                description: "ker f* = coker (f^t)* and coker f* = ker (f^t)*",
                applies: always,
                holds: |r| r.torsion.duality().passed(),
            },
            PredicateCheck {
                name: "exact-sequence",
                description: "orders along 0 -> ker -> K(G+) + K(G-) -> K(G) -> coker -> 0 multiply out",
                applies: always,
                holds: |r| r.exact_sequence(),
            },
            PredicateCheck {
                name: "kernel-bases",
                description: "ker f^t and ker f mod 2 are the symmetrized and the psi-fixed vectors",
                applies: always,
                holds: |r| r.kernel_bases.passed(),
            },
            PredicateCheck {
                name: "kernel-bicycles",
                description: "|ker f*| = number of psi-fixed bicycles of G+ and G-",
                applies: always,
                holds: |r| r.bicycles.kernel_matches(),
            },
            PredicateCheck {
                name: "snake-columns",
                description: "dim(X + Y) + dim(X n Y) = dim X + dim Y for the fixed cycle and bond spaces",
                applies: always,
                holds: |r| r.snake.columns_exact(),
            },
            PredicateCheck {
                name: "bond-dimensions",
                description: "dim (B+ + B-)^psi = |V_R| + |E^phi| and dim B^phi = |V_R| + |V^phi| - 1",
                applies: ratio_gate,
                holds: |r| r.snake.bond_psi_formula() && r.snake.bond_phi_formula(),
            },
            PredicateCheck {
                name: "two-power-ratio",
                description: "|K(G)| / |K(G+) + K(G-)| = |coker f*| / |ker f*| = 2^exponent",
                applies: ratio_gate,
                holds: |r| r.ratio() && r.snake.alternating_product(),
            },
            PredicateCheck {
                name: "forest-factorization",
                description: "kappa(G) = 2^exponent kappa(G+) kappa(G-) for forest counts",
                applies: ratio_gate,
                holds: |r| r.corollary(),
            },
            PredicateCheck {
                name: "cokernel-bicycles",
                description: "|coker f*| = number of phi-fixed bicycles of G",
                applies: fixed_forest_gate,
                holds: |r| r.bicycles.cokernel_matches(),
            },
            PredicateCheck {
                name: "quotient-presentations",
                description: "ker f* and coker f* have the orders of the phi- and psi-side quotients",
                applies: fixed_forest_gate,
                holds: |r| r.bicycles.quotients_match(),
            },
            PredicateCheck {
                name: "injection",
                description: "g maps psi-fixed bicycles injectively into phi-fixed bicycles",
                applies: fixed_forest_gate,
                holds: |r| r.injection.passed(),
            },
            PredicateCheck {
                name: "sum-spaces",
                description:
                    "dim (Z+ + Z-)^psi + (B+ + B-)^psi - dim Z^phi + B^phi = log2 |ker f*| - log2 |coker f*|",
                applies: fixed_forest_gate,
                holds: |r| r.snake.sum_ratio(),
            },
            PredicateCheck {
                name: "cycle-dimensions",
                description: "dim Z^phi - dim (Z+ + Z-)^psi = exponent",
                applies: forest_gate,
                holds: |r| r.snake.cycle_formula(),
            },
            PredicateCheck {
                name: "cokernel-basis",
                description: "paths between fixed components give a basis of Z^phi / im g",
                applies: forest_gate,
                holds: |r| {
                    r.forsnake2
                        .as_ref()
                        .is_some_and(|b| b.passed() && b.cycles.len() as i64 == r.exponent)
                },
            },
        ];
        let mut reg = Self::new();
        for c in table {
            reg.register(Box::new(c)).expect("standard names are distinct");
        }
        reg
    }

    pub fn register(&mut self, check: Box<dyn Check>) -> Result<(), RegistryError> {
        if self.get(check.name()).is_some() {
            return Err(RegistryError::Duplicate(check.name().to_string()));
        }
        self.checks.push(check);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.iter().find(|c| c.name() == name).map(|c| &**c)
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.checks.iter().map(|c| c.name()).collect()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// Keeps only the named checks, in the order given.
    pub fn select<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self, RegistryError> {
        let mut out = Self::new();
        for name in names {
            let name = name.as_ref();
            let pos = self
                .checks
                .iter()
                .position(|c| c.name() == name)
                .ok_or_else(|| RegistryError::Unknown(name.to_string(), self.names().join(", ")))?;
            out.register(self.checks.remove(pos))?;
        }
        Ok(out)
    }

    pub fn run(&self, report: &FactorizationReport) -> Vec<CheckOutcome> {
        self.checks
            .iter()
            .map(|c| CheckOutcome {
                name: c.name(),
                status: c.evaluate(report),
            })
            .collect()
    }
}

/// A way of computing the critical group of an adjoint pair.
pub trait CriticalGroupMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, pair: &AdjointPair) -> Result<FpAbelianGroup, CriticalError>;
}

/// `C1 / (Z + B)` directly.
pub struct QuotientMethod;

impl CriticalGroupMethod for QuotientMethod {
    fn name(&self) -> &'static str {
        "quotient"
    }

    fn compute(&self, pair: &AdjointPair) -> Result<FpAbelianGroup, CriticalError> {
        Ok(critical_group(pair))
    }
}

/// Cokernel of the Laplacian with `coker d` cancelled.
pub struct LaplacianMethod;

impl CriticalGroupMethod for LaplacianMethod {
    fn name(&self) -> &'static str {
        "laplacian"
    }

    fn compute(&self, pair: &AdjointPair) -> Result<FpAbelianGroup, CriticalError> {
        critical_group_via_laplacian(pair)
    }
}

pub struct MethodRegistry {
    methods: Vec<Box<dyn CriticalGroupMethod>>,
}

impl MethodRegistry {
    pub fn standard() -> Self {
        MethodRegistry {
            methods: vec![Box::new(QuotientMethod), Box::new(LaplacianMethod)],
        }
    }

    pub fn register(&mut self, method: Box<dyn CriticalGroupMethod>) -> Result<(), RegistryError> {
        if self.names().contains(&method.name()) {
            return Err(RegistryError::Duplicate(method.name().to_string()));
        }
        self.methods.push(method);
        Ok(())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn CriticalGroupMethod, RegistryError> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| &**m)
            .ok_or_else(|| RegistryError::Unknown(name.to_string(), self.names().join(", ")))
    }
}
