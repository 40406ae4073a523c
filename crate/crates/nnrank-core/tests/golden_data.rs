//! The constants are encoded twice: as source-level literals and as golden
//! files in the matrix text format.  These tests pin the two encodings to
//! each other, so a transcription slip has to happen twice to go unnoticed.

use nnrank_core::boundprop::ConstraintTable;
use nnrank_core::exactnum::{Quad, Rational};
use nnrank_core::linalg::ExactMatrix;
use nnrank_core::paperdata::{figure4_table, PaperConstants};

fn rational_golden(text: &str) -> ExactMatrix<Rational> {
    ExactMatrix::from_text(text).expect("golden file parses")
}

fn quad_golden(text: &str) -> ExactMatrix<Quad> {
    ExactMatrix::from_text(text).expect("golden file parses")
}

#[test]
fn golden_matrices_match_source_constants() {
    let k = PaperConstants::get();
    assert_eq!(rational_golden(include_str!("../data/Mprime.mat")), k.mprime);
    assert_eq!(rational_golden(include_str!("../data/Weps.mat")), k.weps);
    assert_eq!(quad_golden(include_str!("../data/W.mat")), k.w);
    assert_eq!(quad_golden(include_str!("../data/Hprime.mat")), k.hprime);
    assert_eq!(quad_golden(include_str!("../data/Heps.mat")), k.heps);
    assert_eq!(rational_golden(include_str!("../data/C.mat")), k.map.c);
    assert_eq!(rational_golden(include_str!("../data/d.mat")), k.map.d);
    assert_eq!(rational_golden(include_str!("../data/Rpoints.mat")), k.r_matrix());
    assert_eq!(rational_golden(include_str!("../data/Qeps.mat")), k.qeps_matrix());
    assert_eq!(quad_golden(include_str!("../data/Qstar.mat")), k.qstar_matrix());
}

#[test]
fn golden_constraint_csv_matches_source_table() {
    let golden = ConstraintTable::from_csv(include_str!("../data/figure4.csv"))
        .expect("golden CSV parses");
    assert_eq!(golden, figure4_table());
}

#[test]
fn m_is_the_column_concatenation() {
    let k = PaperConstants::get();
    let concat = k.mprime.concat_cols(&k.weps).unwrap();
    assert_eq!(k.m, concat);
    assert_eq!(k.m.rows(), 6);
    assert_eq!(k.m.cols(), 11);
}

#[test]
fn constants_dump_round_trips_through_text() {
    let k = PaperConstants::get();
    for (name, text) in k.named_matrices() {
        match name {
            "W" | "Hprime" | "Heps" | "Qstar" => {
                let parsed = ExactMatrix::<Quad>::from_text(&text).unwrap();
                assert_eq!(parsed.to_text(), text, "{name} round trip");
            }
            _ => {
                let parsed = ExactMatrix::<Rational>::from_text(&text).unwrap();
                assert_eq!(parsed.to_text(), text, "{name} round trip");
            }
        }
    }
}
