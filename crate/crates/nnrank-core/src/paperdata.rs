//! The certificate constants and the end-to-end identity checks.
//!
//! Everything here is data: the rational matrix `M = (M′ | Wε)`, its
//! irrational factorization `M = W·(H′ | Hε)` over Q(√2), the affine
//! parameterization `f(x) = Cx + d` of the ambient polytope, and the three
//! point families `r`, `qᵉ`, `q*` that realize the matrix columns inside the
//! polytope.  [`PaperConstants::verify_certificate`] re-derives every claimed
//! identity exactly and reports per-check defects.
//!
//! Constants are embedded as source-level literals in the entry grammar and
//! mirrored by golden files in the matrix text format under `data/`; a test
//! asserts the two encodings agree, so a transcription slip must happen twice
//! to survive — and would still have to pass the overdetermined certificate
//! identities.

use std::sync::OnceLock;

use num_traits::Zero;
use thiserror::Error;

use crate::boundprop::{ConstraintKind, ConstraintTable, EntryConstraint};
use crate::exactnum::{quad, rat, Field, Quad, Rational, Sign};
use crate::linalg::{ExactMatrix, StochasticWitness};

/// A point of F³, stored as `[x, y, z]`.
pub type Point3<F> = [F; 3];

const MPRIME: [[&str; 6]; 6] = [
    ["5/44", "5/11", "85/121", "0", "0", "0"],
    ["0", "0", "0", "2/11", "3/11", "7/33"],
    ["1/11", "1/44", "2/121", "1/44", "15/88", "17/88"],
    ["1/44", "1/44", "8/121", "1/44", "19/88", "5/24"],
    ["3/11", "3/11", "12/121", "8/11", "2/11", "2/33"],
    ["1/2", "5/22", "14/121", "1/22", "7/44", "43/132"],
];

const WEPS: [[&str; 5]; 6] = [
    ["0", "133/165", "640/2233", "0", "0"],
    ["1/111540", "0", "0", "17209/58047", "997/5082"],
    ["114721/892320", "1/146850", "17/506", "385/1759", "2921/203280"],
    ["47/1248", "413/5874", "1/102718", "2915/10554", "4381/203280"],
    ["36/169", "22/267", "18674/51359", "1/116094", "3252/4235"],
    ["276953/446160", "1009/24475", "16239/51359", "1100/5277", "1/101640"],
];

const W: [[&str; 5]; 6] = [
    ["0", "5/7+5/77s", "15/77+5/77s", "0", "0"],
    ["0", "0", "0", "20/77+2/77s", "48/187-8/187s"],
    ["0+1/11s", "0", "4/77-1/77s", "3/14+1/308s", "14/187-8/187s"],
    ["-1/11+1/11s", "4/77+1/77s", "0", "39/154+5/308s", "21/187-12/187s"],
    ["8/11-4/11s", "12/77-4/77s", "4/11", "0", "104/187+28/187s"],
    ["4/11+2/11s", "6/77-2/77s", "30/77-4/77s", "3/11-1/22s", "0"],
];

const HPRIME: [[&str; 6]; 5] = [
    ["1/4+1/4s", "0", "0+1/11s", "1/4-1/8s", "0", "1/6+1/12s"],
    ["0", "1/2-1/8s", "1-1/11s", "0", "0", "0"],
    ["3/4-1/4s", "1/2+1/8s", "0", "0", "0", "0"],
    ["0", "0", "0", "0", "21/34+7/68s", "5/6-1/12s"],
    ["0", "0", "0", "3/4+1/8s", "13/34-7/68s", "0"],
];

const HEPS: [[&str; 5]; 5] = [
    [
        "30419/40560+28679/162240s",
        "-2728/46725+5791/140175s",
        "2741/98049-642/32683s",
        "-689/10554+15595/337728s",
        "389/1848-5501/36960s",
    ],
    ["0", "163318/140175-7277/62300s", "5958/32683-50543/392196s", "0", "0"],
    ["0", "-2137/20025+6047/80100s", "11062/14007+8321/56028s", "0", "0"],
    [
        "7443/8840-51313/86190s",
        "0",
        "0",
        "148897/179418+172627/1435344s",
        "-1741/26180+1847/39270s",
    ],
    [
        "-408157/689520+1154473/2758080s",
        "0",
        "0",
        "7039/29903-318541/1913792s",
        "134461/157080+1163/11424s",
    ],
];

const C: [[&str; 3]; 6] = [
    ["0", "10/11", "0"],
    ["0", "0", "4/11"],
    ["-1/11", "-2/11", "1/22"],
    ["-1/11", "0", "5/22"],
    ["4/11", "0", "0"],
    ["-2/11", "-8/11", "-7/11"],
];

const DVEC: [&str; 6] = ["0", "0", "2/11", "1/11", "0", "8/11"];

const R_POINTS: [[&str; 3]; 6] = [
    ["3/4", "1/8", "0"],
    ["3/4", "1/2", "0"],
    ["3/11", "17/22", "0"],
    ["2", "0", "1/2"],
    ["1/2", "0", "3/4"],
    ["1/6", "0", "7/12"],
];

const QEPS_POINTS: [[&str; 3]; 5] = [
    ["99/169", "0", "1/40560"],
    ["121/534", "133/150", "0"],
    ["9337/9338", "64/203", "0"],
    ["1/42216", "0", "17209/21108"],
    ["813/385", "0", "997/1848"],
];

const QSTAR_POINTS: [[&str; 3]; 5] = [
    ["2-1s", "0", "0"],
    ["3/7-1/7s", "11/14+1/14s", "0"],
    ["1", "3/14+1/14s", "0"],
    ["0", "0", "5/7+1/14s"],
    ["26/17+7/17s", "0", "12/17-2/17s"],
];

/// The six half-spaces carving the polytope out of ℝ³, written as
/// `nx·x + ny·y + nz·z + c >= 0`.  Each is a positive rescaling of the
/// matching row of `(C | d)`.
pub const HALF_SPACES: [[&str; 4]; 6] = [
    ["0", "1", "0", "0"],
    ["0", "0", "1", "0"],
    ["-1/2", "-1", "1/4", "1"],
    ["-1", "0", "5/2", "1"],
    ["1", "0", "0", "0"],
    ["-1/4", "-1", "-7/8", "1"],
];

/// The injective affine map `f(x) = Cx + d` from ℝ³ onto the affine span of
/// the matrix columns, with `C` 6×3 and `d` 6×1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap3to6 {
    pub c: ExactMatrix<Rational>,
    pub d: ExactMatrix<Rational>,
}

/// Outcome of a polytope membership test: inside iff `f(x) >= 0` entrywise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership<F> {
    pub inside: bool,
    /// First violated facet (0-based row of `C`) and the negative value.
    pub violation: Option<(usize, F)>,
}

impl AffineMap3to6 {
    /// `Cx + d`, computed in any field containing the rationals.
    pub fn apply<F: Field>(&self, x: &Point3<F>) -> Vec<F> {
        (0..self.c.rows())
            .map(|i| {
                let mut acc = F::from_rational(self.d[(i, 0)].clone());
                for (k, coord) in x.iter().enumerate() {
                    acc = acc + F::from_rational(self.c[(i, k)].clone()) * coord.clone();
                }
                acc
            })
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.c.rank() == self.c.cols()
    }

    /// Membership of `x` in the polytope `{x : f(x) >= 0}`.
    pub fn membership<F: Field>(&self, x: &Point3<F>) -> Membership<F> {
        let image = self.apply(x);
        for (i, v) in image.into_iter().enumerate() {
            if v.sign() == Sign::Negative {
                return Membership { inside: false, violation: Some((i, v)) };
            }
        }
        Membership { inside: true, violation: None }
    }
}

/// Every constant object of the certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperConstants {
    /// 6×6 rational, the first six columns of `M`.
    pub mprime: ExactMatrix<Rational>,
    /// 6×5 rational, the last five columns of `M` (close to `W`).
    pub weps: ExactMatrix<Rational>,
    /// 6×11 rational, `(M′ | Wε)`.
    pub m: ExactMatrix<Rational>,
    /// 6×5 over Q(√2), the irrational left factor.
    pub w: ExactMatrix<Quad>,
    /// 5×6 over Q(√2), with `M′ = W·H′`.
    pub hprime: ExactMatrix<Quad>,
    /// 5×5 over Q(√2), with `Wε = W·Hε`.
    pub heps: ExactMatrix<Quad>,
    /// The affine parameterization `f(x) = Cx + d`.
    pub map: AffineMap3to6,
    /// Preimages of the `M′` columns: `f(r[i]) = M′[:,i]`.
    pub r: [Point3<Rational>; 6],
    /// Preimages of the `Wε` columns.
    pub qeps: [Point3<Rational>; 5],
    /// Preimages of the `W` columns, with irrational coordinates.
    pub qstar: [Point3<Quad>; 5],
}

/// One check of the certificate report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertCheck {
    pub id: &'static str,
    pub description: String,
    pub pass: bool,
    pub defect: Option<String>,
}

/// Outcome of [`PaperConstants::verify_certificate`]: one entry per check
/// (a)–(h), every one exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub checks: Vec<CertCheck>,
}

impl CertificateReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&CertCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum MutationError {
    #[error("unknown constant `{0}` (expected one of M, Mprime, Weps, W, Hprime, Heps, C, d)")]
    UnknownTarget(String),
    #[error("entry ({row},{col}) outside {target} which is {rows}x{cols}")]
    OutOfRange { target: String, row: usize, col: usize, rows: usize, cols: usize },
}

/// Which constant a [`Mutation`] perturbs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationTarget {
    M,
    Mprime,
    Weps,
    W,
    Hprime,
    Heps,
    C,
    D,
}

impl MutationTarget {
    pub fn parse(name: &str) -> Result<Self, MutationError> {
        Ok(match name {
            "M" => MutationTarget::M,
            "Mprime" => MutationTarget::Mprime,
            "Weps" => MutationTarget::Weps,
            "W" => MutationTarget::W,
            "Hprime" => MutationTarget::Hprime,
            "Heps" => MutationTarget::Heps,
            "C" => MutationTarget::C,
            "d" => MutationTarget::D,
            other => return Err(MutationError::UnknownTarget(other.to_string())),
        })
    }
}

/// An additive perturbation of one constant entry (1-based indices); for the
/// Q(√2)-valued matrices the delta lands on the rational part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub target: MutationTarget,
    pub row: usize,
    pub col: usize,
    pub delta: Rational,
}

fn parse_rat_matrix<const R: usize, const C2: usize>(
    rows: &[[&str; C2]; R],
) -> ExactMatrix<Rational> {
    ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| rat(s)).collect()).collect())
        .expect("constant tables are rectangular")
}

fn parse_quad_matrix<const R: usize, const C2: usize>(
    rows: &[[&str; C2]; R],
) -> ExactMatrix<Quad> {
    ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| quad(s)).collect()).collect())
        .expect("constant tables are rectangular")
}

fn parse_rat_points<const N: usize>(points: &[[&str; 3]; N]) -> [Point3<Rational>; N] {
    points.map(|p| p.map(|s| rat(s)))
}

impl PaperConstants {
    /// Builds an owned copy of all constants from the source literals.
    pub fn build() -> Self {
        let mprime = parse_rat_matrix(&MPRIME);
        let weps = parse_rat_matrix(&WEPS);
        let m = mprime.concat_cols(&weps).expect("row counts match");
        PaperConstants {
            mprime,
            weps,
            m,
            w: parse_quad_matrix(&W),
            hprime: parse_quad_matrix(&HPRIME),
            heps: parse_quad_matrix(&HEPS),
            map: AffineMap3to6 {
                c: parse_rat_matrix(&C),
                d: ExactMatrix::from_rows(DVEC.iter().map(|s| vec![rat(s)]).collect())
                    .expect("column vector"),
            },
            r: parse_rat_points(&R_POINTS),
            qeps: parse_rat_points(&QEPS_POINTS),
            qstar: QSTAR_POINTS.map(|p| p.map(|s| quad(s))),
        }
    }

    /// The shared immutable instance.
    pub fn get() -> &'static PaperConstants {
        static INSTANCE: OnceLock<PaperConstants> = OnceLock::new();
        INSTANCE.get_or_init(PaperConstants::build)
    }

    /// The `r` points as a 3×6 matrix of columns.
    pub fn r_matrix(&self) -> ExactMatrix<Rational> {
        points_as_columns(&self.r)
    }

    /// The `qᵉ` points as a 3×5 matrix of columns.
    pub fn qeps_matrix(&self) -> ExactMatrix<Rational> {
        points_as_columns(&self.qeps)
    }

    /// The `q*` points as a 3×5 matrix of columns.
    pub fn qstar_matrix(&self) -> ExactMatrix<Quad> {
        points_as_columns(&self.qstar)
    }

    /// All named matrices in the matrix text format, for `constants dump`.
    pub fn named_matrices(&self) -> Vec<(&'static str, String)> {
        vec![
            ("Mprime", self.mprime.to_text()),
            ("Weps", self.weps.to_text()),
            ("M", self.m.to_text()),
            ("W", self.w.to_text()),
            ("Hprime", self.hprime.to_text()),
            ("Heps", self.heps.to_text()),
            ("C", self.map.c.to_text()),
            ("d", self.map.d.to_text()),
            ("Rpoints", self.r_matrix().to_text()),
            ("Qeps", self.qeps_matrix().to_text()),
            ("Qstar", self.qstar_matrix().to_text()),
        ]
    }

    /// Returns a copy with one entry perturbed, rebuilding `M` as needed.
    pub fn with_mutation(&self, mutation: &Mutation) -> Result<Self, MutationError> {
        let mut out = self.clone();
        let (row, col) = (mutation.row, mutation.col);
        let bump_rat = |m: &ExactMatrix<Rational>| -> Result<ExactMatrix<Rational>, MutationError> {
            check_range("rational matrix", m.rows(), m.cols(), row, col)?;
            let value = m[(row - 1, col - 1)].clone() + mutation.delta.clone();
            Ok(m.with_entry(row - 1, col - 1, value))
        };
        let bump_quad = |m: &ExactMatrix<Quad>| -> Result<ExactMatrix<Quad>, MutationError> {
            check_range("quadratic matrix", m.rows(), m.cols(), row, col)?;
            let value = m[(row - 1, col - 1)].clone()
                + Quad::from_rational(mutation.delta.clone());
            Ok(m.with_entry(row - 1, col - 1, value))
        };
        match mutation.target {
            MutationTarget::Mprime => out.mprime = bump_rat(&self.mprime)?,
            MutationTarget::Weps => out.weps = bump_rat(&self.weps)?,
            MutationTarget::M => {
                check_range("M", self.m.rows(), self.m.cols(), row, col)?;
                if col <= self.mprime.cols() {
                    out.mprime = bump_rat(&self.mprime)?;
                } else {
                    let inner = Mutation { col: col - self.mprime.cols(), ..mutation.clone() };
                    return self.with_mutation(&Mutation {
                        target: MutationTarget::Weps,
                        ..inner
                    });
                }
            }
            MutationTarget::W => out.w = bump_quad(&self.w)?,
            MutationTarget::Hprime => out.hprime = bump_quad(&self.hprime)?,
            MutationTarget::Heps => out.heps = bump_quad(&self.heps)?,
            MutationTarget::C => out.map.c = bump_rat(&self.map.c)?,
            MutationTarget::D => out.map.d = bump_rat(&self.map.d)?,
        }
        out.m = out.mprime.concat_cols(&out.weps).expect("row counts match");
        Ok(out)
    }

    /// A constraint table pinning every `Wε` entry to its exact value
    /// (tighter than the published entry-wise table).
    pub fn weps_exact_table(&self) -> ConstraintTable {
        let mut constraints = Vec::new();
        for i in 0..self.weps.rows() {
            for j in 0..self.weps.cols() {
                let v = self.weps[(i, j)].clone();
                if v.is_zero() {
                    constraints.push(EntryConstraint {
                        row: i + 1,
                        col: j + 1,
                        kind: ConstraintKind::Eq0,
                        bound: rat("0"),
                    });
                } else {
                    constraints.push(EntryConstraint {
                        row: i + 1,
                        col: j + 1,
                        kind: ConstraintKind::Ge,
                        bound: v.clone(),
                    });
                    constraints.push(EntryConstraint {
                        row: i + 1,
                        col: j + 1,
                        kind: ConstraintKind::Le,
                        bound: v,
                    });
                }
            }
        }
        ConstraintTable::new(constraints).expect("exact entries lie in [0,1]")
    }

    /// Runs every certificate check exactly; see the per-check descriptions.
    pub fn verify_certificate(&self) -> CertificateReport {
        let mut checks = Vec::new();

        // (a) M = W · (H′ | Hε), exactly.
        let check_a = match self.hprime.concat_cols(&self.heps) {
            Ok(h) => match self.w.mul(&h) {
                Ok(product) => {
                    let defect = first_matrix_defect(&self.m.to_quad(), &product);
                    CertCheck {
                        id: "a",
                        description: "M = W·(H'|Heps) exactly".to_string(),
                        pass: defect.is_none(),
                        defect,
                    }
                }
                Err(e) => check_error("a", "M = W·(H'|Heps) exactly", e),
            },
            Err(e) => check_error("a", "M = W·(H'|Heps) exactly", e),
        };
        checks.push(check_a);

        // (b) all six matrices stochastic.
        let mut defect = None;
        for (name, witness) in [
            ("M", self.m.stochastic_witness().map(|w| describe_witness(&w))),
            ("Mprime", self.mprime.stochastic_witness().map(|w| describe_witness(&w))),
            ("Weps", self.weps.stochastic_witness().map(|w| describe_witness(&w))),
            ("W", self.w.stochastic_witness().map(|w| describe_witness(&w))),
            ("Hprime", self.hprime.stochastic_witness().map(|w| describe_witness(&w))),
            ("Heps", self.heps.stochastic_witness().map(|w| describe_witness(&w))),
        ] {
            if let Some(w) = witness {
                defect = Some(format!("{name}: {w}"));
                break;
            }
        }
        checks.push(CertCheck {
            id: "b",
            description: "M, M', Weps, W, H', Heps all stochastic".to_string(),
            pass: defect.is_none(),
            defect,
        });

        // (c) rank(M) = 4.
        let rank = self.m.rank();
        checks.push(CertCheck {
            id: "c",
            description: "rank(M) = 4".to_string(),
            pass: rank == 4,
            defect: (rank != 4).then(|| format!("rank(M) = {rank}")),
        });

        // (d) f(r_i) = M'[:,i].
        let mut defect = None;
        for (i, point) in self.r.iter().enumerate() {
            let image = self.map.apply(point);
            let expected = self.mprime.column(i);
            if image != expected {
                defect = Some(format!("f(r{}) != Mprime column {}", i + 1, i + 1));
                break;
            }
        }
        checks.push(CertCheck {
            id: "d",
            description: "f(r_i) = M' columns".to_string(),
            pass: defect.is_none(),
            defect,
        });

        // (e) f(qᵉ_i) = Wε[:,i] and f(q*_i) = W[:,i].
        let mut defect = None;
        for (i, point) in self.qeps.iter().enumerate() {
            if self.map.apply(point) != self.weps.column(i) {
                defect = Some(format!("f(qeps{}) != Weps column {}", i + 1, i + 1));
                break;
            }
        }
        if defect.is_none() {
            for (i, point) in self.qstar.iter().enumerate() {
                if self.map.apply(point) != self.w.column(i) {
                    defect = Some(format!("f(qstar{}) != W column {}", i + 1, i + 1));
                    break;
                }
            }
        }
        checks.push(CertCheck {
            id: "e",
            description: "f(qeps_i) = Weps columns, f(qstar_i) = W columns".to_string(),
            pass: defect.is_none(),
            defect,
        });

        // (f) the two pulled-back factorizations of the point matrices.
        let defect = (|| -> Result<Option<String>, crate::linalg::LinalgError> {
            let qstar = self.qstar_matrix();
            let lhs_r = self.r_matrix().to_quad();
            let rhs_r = qstar.mul(&self.hprime)?;
            if let Some(d) = first_matrix_defect(&lhs_r, &rhs_r) {
                return Ok(Some(format!("(r_i) != (q*_i)·H': {d}")));
            }
            let lhs_q = self.qeps_matrix().to_quad();
            let rhs_q = qstar.mul(&self.heps)?;
            if let Some(d) = first_matrix_defect(&lhs_q, &rhs_q) {
                return Ok(Some(format!("(qeps_i) != (q*_i)·Heps: {d}")));
            }
            Ok(None)
        })()
        .unwrap_or_else(|e| Some(e.to_string()));
        checks.push(CertCheck {
            id: "f",
            description: "(r_i) = (q*_i)·H' and (qeps_i) = (q*_i)·Heps".to_string(),
            pass: defect.is_none(),
            defect,
        });

        // (g) every named point lies in the polytope.
        let mut defect = None;
        for (name, result) in self
            .r
            .iter()
            .enumerate()
            .map(|(i, p)| (format!("r{}", i + 1), self.map.membership(p)))
            .chain(
                self.qeps
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (format!("qeps{}", i + 1), self.map.membership(p))),
            )
        {
            if let Some((facet, value)) = result.violation {
                defect = Some(format!("{name} violates facet {} by {value}", facet + 1));
                break;
            }
        }
        if defect.is_none() {
            for (i, p) in self.qstar.iter().enumerate() {
                if let Some((facet, value)) = self.map.membership(p).violation {
                    defect =
                        Some(format!("qstar{} violates facet {} by {value}", i + 1, facet + 1));
                    break;
                }
            }
        }
        checks.push(CertCheck {
            id: "g",
            description: "all r_i, qeps_i, qstar_i lie in the polytope".to_string(),
            pass: defect.is_none(),
            defect,
        });

        // (h) Wε satisfies the published entry-wise constraint table.
        let table = figure4_table();
        let violated = table.check_matrix(|i, j| self.weps[(i, j)].clone());
        checks.push(CertCheck {
            id: "h",
            description: "Weps satisfies the entry-wise constraint table (eps = 1/100000)"
                .to_string(),
            pass: violated.is_none(),
            defect: violated.map(|c| {
                format!(
                    "Weps[{},{}] = {} violates {} {}",
                    c.row,
                    c.col,
                    self.weps[(c.row - 1, c.col - 1)],
                    c.kind.token(),
                    c.bound
                )
            }),
        });

        CertificateReport { checks }
    }
}

fn check_range(
    target: &str,
    rows: usize,
    cols: usize,
    row: usize,
    col: usize,
) -> Result<(), MutationError> {
    if row == 0 || row > rows || col == 0 || col > cols {
        return Err(MutationError::OutOfRange {
            target: target.to_string(),
            row,
            col,
            rows,
            cols,
        });
    }
    Ok(())
}

fn check_error(
    id: &'static str,
    description: &str,
    e: crate::linalg::LinalgError,
) -> CertCheck {
    CertCheck {
        id,
        description: description.to_string(),
        pass: false,
        defect: Some(e.to_string()),
    }
}

fn points_as_columns<F: Field, const N: usize>(points: &[Point3<F>; N]) -> ExactMatrix<F> {
    let mut rows = vec![Vec::with_capacity(N); 3];
    for p in points {
        for (k, coord) in p.iter().enumerate() {
            rows[k].push(coord.clone());
        }
    }
    ExactMatrix::from_rows(rows).expect("3×N point matrix")
}

fn first_matrix_defect<F: Field>(lhs: &ExactMatrix<F>, rhs: &ExactMatrix<F>) -> Option<String> {
    if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
        return Some(format!(
            "shape {}x{} vs {}x{}",
            lhs.rows(),
            lhs.cols(),
            rhs.rows(),
            rhs.cols()
        ));
    }
    for i in 0..lhs.rows() {
        for j in 0..lhs.cols() {
            let diff = lhs[(i, j)].clone() - rhs[(i, j)].clone();
            if !diff.is_zero() {
                return Some(format!("defect {} at ({},{})", diff, i + 1, j + 1));
            }
        }
    }
    None
}

fn describe_witness<F: Field>(witness: &StochasticWitness<F>) -> String {
    match witness {
        StochasticWitness::NegativeEntry { row, col, value } => {
            format!("negative entry {} at ({},{})", value, row + 1, col + 1)
        }
        StochasticWitness::ColumnSumDefect { col, defect } => {
            format!("column {} sum defect {}", col + 1, defect)
        }
    }
}

/// The published entry-wise constraint table on W̃ with ε = 1/100000.
pub fn figure4_table() -> ConstraintTable {
    figure4_table_with_eps(&rat("1/100000"))
}

/// The same table with the small-entry threshold ε replaced.
pub fn figure4_table_with_eps(eps: &Rational) -> ConstraintTable {
    use ConstraintKind::{Eq0, Ge, Le};
    let e = eps.clone();
    let rows: Vec<(usize, usize, ConstraintKind, Rational)> = vec![
        (1, 1, Eq0, rat("0")),
        (1, 2, Ge, rat("8/10")),
        (1, 3, Ge, rat("286/1000")),
        (1, 3, Le, rat("287/1000")),
        (1, 4, Eq0, rat("0")),
        (1, 5, Eq0, rat("0")),
        (2, 1, Le, e.clone()),
        (2, 2, Eq0, rat("0")),
        (2, 3, Eq0, rat("0")),
        (2, 4, Ge, rat("29/100")),
        (2, 5, Ge, rat("196/1000")),
        (3, 2, Le, e.clone()),
        (3, 3, Ge, rat("335/10000")),
        (3, 4, Ge, rat("21/100")),
        (3, 5, Le, rat("15/1000")),
        (4, 2, Ge, rat("7/100")),
        (4, 3, Le, e.clone()),
        (4, 4, Ge, rat("27/100")),
        (4, 5, Le, rat("22/1000")),
        (5, 4, Le, e.clone()),
        (5, 5, Ge, rat("767/1000")),
        (6, 1, Ge, rat("62/100")),
        (6, 3, Le, rat("32/100")),
        (6, 4, Le, rat("21/100")),
        (6, 5, Le, e),
    ];
    ConstraintTable::new(
        rows.into_iter()
            .map(|(row, col, kind, bound)| EntryConstraint { row, col, kind, bound })
            .collect(),
    )
    .expect("the published table is consistent")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::quad;

    #[test]
    fn certificate_passes_end_to_end() {
        let report = PaperConstants::get().verify_certificate();
        for check in &report.checks {
            assert!(
                check.pass,
                "check ({}) failed: {} — {:?}",
                check.id, check.description, check.defect
            );
        }
        assert_eq!(report.checks.len(), 8);
    }

    #[test]
    fn apply_f_matches_listed_examples() {
        let k = PaperConstants::get();
        // f(r1) = (5/44, 0, 1/11, 1/44, 3/11, 1/2)
        let image = k.map.apply(&k.r[0]);
        let expected: Vec<Rational> =
            ["5/44", "0", "1/11", "1/44", "3/11", "1/2"].iter().map(|s| rat(s)).collect();
        assert_eq!(image, expected);
        // f(q1^eps) = Weps column 1 and f(q1^*) = W column 1.
        assert_eq!(k.map.apply(&k.qeps[0]), k.weps.column(0));
        assert_eq!(k.map.apply(&k.qstar[0]), k.w.column(0));
    }

    #[test]
    fn membership_examples() {
        let k = PaperConstants::get();
        // q5^* = ((26+7√2)/17, 0, (12−2√2)/17) lies inside.
        assert!(k.map.membership(&k.qstar[4]).inside);
        // The origin satisfies f(0) = d >= 0.
        let origin = [rat("0"), rat("0"), rat("0")];
        assert!(k.map.membership(&origin).inside);
        // (3,0,0) lies outside; the witness scan reports the first violated
        // facet (row 3 of C), and the facet -x + 5z/2 + 1 >= 0 (row 4) is
        // violated as well, with C·x + d = -2/11 there.
        let outside = [rat("3"), rat("0"), rat("0")];
        let result = k.map.membership(&outside);
        assert!(!result.inside);
        assert_eq!(result.violation, Some((2, rat("-1/11"))));
        assert_eq!(k.map.apply(&outside)[3], rat("-2/11"));
    }

    #[test]
    fn perturbed_w_breaks_product_check() {
        let k = PaperConstants::get();
        let mutated = k
            .with_mutation(&Mutation {
                target: MutationTarget::W,
                row: 1,
                col: 2,
                delta: rat("1/1000000"),
            })
            .unwrap();
        let report = mutated.verify_certificate();
        let a = report.checks.iter().find(|c| c.id == "a").unwrap();
        assert!(!a.pass);
        assert!(a.defect.as_deref().unwrap().contains("(1,2)"));
    }

    #[test]
    fn out_of_polytope_column_breaks_membership_check() {
        let k = PaperConstants::get();
        // Push r1 outside: x = 3 violates facet 4.
        let mut mutated = k.clone();
        mutated.r[0] = [rat("3"), rat("0"), rat("0")];
        let report = mutated.verify_certificate();
        let g = report.checks.iter().find(|c| c.id == "g").unwrap();
        assert!(!g.pass);
    }

    #[test]
    fn rank_of_w_is_four() {
        assert_eq!(PaperConstants::get().w.rank(), 4);
    }

    #[test]
    fn map_is_injective() {
        assert!(PaperConstants::get().map.is_injective());
    }

    #[test]
    fn half_spaces_are_rescaled_rows_of_c() {
        let k = PaperConstants::get();
        for (i, hs) in HALF_SPACES.iter().enumerate() {
            let normal = [rat(hs[0]), rat(hs[1]), rat(hs[2])];
            let offset = rat(hs[3]);
            // Find the positive scale t with C[i,:] = t·normal, d[i] = t·offset.
            let mut scale = None;
            for (k_idx, n) in normal.iter().enumerate() {
                if !n.is_zero() {
                    scale = Some(k.map.c[(i, k_idx)].clone().checked_div(n).unwrap());
                    break;
                }
            }
            let t = scale.expect("nonzero normal");
            assert_eq!(t.sign(), Sign::Positive, "facet {i} rescaling is positive");
            for (k_idx, n) in normal.iter().enumerate() {
                assert_eq!(k.map.c[(i, k_idx)], t.clone() * n.clone());
            }
            assert_eq!(k.map.d[(i, 0)], t * offset);
        }
    }

    #[test]
    fn r_points_span_coordinate_planes() {
        let k = PaperConstants::get();
        // r1,r2,r3 affinely span the z = 0 plane.
        for p in &k.r[..3] {
            assert!(p[2].is_zero());
        }
        let d1 = [
            k.r[1][0].clone() - k.r[0][0].clone(),
            k.r[1][1].clone() - k.r[0][1].clone(),
        ];
        let d2 = [
            k.r[2][0].clone() - k.r[0][0].clone(),
            k.r[2][1].clone() - k.r[0][1].clone(),
        ];
        let det = d1[0].clone() * d2[1].clone() - d1[1].clone() * d2[0].clone();
        assert!(!det.is_zero(), "r1,r2,r3 affinely independent in the plane");
        // r4,r5,r6 affinely span the y = 0 plane.
        for p in &k.r[3..] {
            assert!(p[1].is_zero());
        }
        let e1 = [
            k.r[4][0].clone() - k.r[3][0].clone(),
            k.r[4][2].clone() - k.r[3][2].clone(),
        ];
        let e2 = [
            k.r[5][0].clone() - k.r[3][0].clone(),
            k.r[5][2].clone() - k.r[3][2].clone(),
        ];
        let det = e1[0].clone() * e2[1].clone() - e1[1].clone() * e2[0].clone();
        assert!(!det.is_zero(), "r4,r5,r6 affinely independent in the plane");
    }

    #[test]
    fn mutation_of_m_lands_in_the_right_block() {
        let k = PaperConstants::get();
        let mutated = k
            .with_mutation(&Mutation {
                target: MutationTarget::M,
                row: 2,
                col: 8,
                delta: rat("1/7"),
            })
            .unwrap();
        assert_eq!(
            mutated.weps[(1, 1)],
            k.weps[(1, 1)].clone() + rat("1/7")
        );
        assert_eq!(mutated.m[(1, 7)], k.m[(1, 7)].clone() + rat("1/7"));
        assert!(matches!(
            k.with_mutation(&Mutation {
                target: MutationTarget::W,
                row: 7,
                col: 1,
                delta: rat("1")
            }),
            Err(MutationError::OutOfRange { .. })
        ));
    }

    #[test]
    fn weps_exact_table_is_tighter_than_published() {
        let k = PaperConstants::get();
        let table = k.weps_exact_table();
        assert!(table
            .check_matrix(|i, j| k.weps[(i, j)].clone())
            .is_none());
        // Sanity: q3* second coordinate matches the eliminated value (3+√2)/14.
        assert_eq!(k.qstar[2][1], quad("3/14+1/14s"));
    }
}
