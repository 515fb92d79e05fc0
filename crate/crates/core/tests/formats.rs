//! Every JSON example in docs/formats.md decodes under its declared kind.

use std::path::Path;

use repstab::dkconfig::{ArnoldPiece, DKGradedPiece};
use repstab::fimod::{ConsistentSequence, FIModuleTable};
use repstab::liecalc::GradedPieceRep;
use repstab::reps::SymRep;
use repstab::store::{self, Storable};
use repstab::symchar::CharacterVector;
use repstab::verify::VerificationReport;

fn round_trip<T: Storable>(text: &str) {
    let value: T = store::decode(text).unwrap_or_else(|e| panic!("{}: {e}", T::KIND));
    assert_eq!(store::encode(&value).unwrap(), text, "{} is not canonical", T::KIND);
}

#[test]
fn documented_examples_decode_canonically() {
    let doc = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/formats.md");
    let text = std::fs::read_to_string(doc).unwrap();
    let examples: Vec<&str> = text
        .split("```json\n")
        .skip(1)
        .map(|chunk| chunk.split("\n```").next().unwrap())
        .collect();
    assert_eq!(examples.len(), 8);
    for ex in examples {
        let kind = store::decode_envelope(ex).unwrap().kind;
        match kind.as_str() {
            "symrep" => round_trip::<SymRep>(ex),
            "class_function" => round_trip::<CharacterVector>(ex),
            "fimodule_table" => round_trip::<FIModuleTable>(ex),
            "consistent_sequence" => round_trip::<ConsistentSequence>(ex),
            "graded_piece_rep" => round_trip::<GradedPieceRep>(ex),
            "dk_graded_piece" => round_trip::<DKGradedPiece>(ex),
            "arnold_piece" => round_trip::<ArnoldPiece>(ex),
            "verification_report" => round_trip::<VerificationReport>(ex),
            other => panic!("undocumented kind {other}"),
        }
    }
}
