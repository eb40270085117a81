//! Robinson–Schensted correspondence and subsequence types of diagrams.

mod paths;
mod tableau;

pub use paths::{
    is_admissible, oracle_limit, row_count_witness, subsequence_type, subsequence_type_oracle,
    witness_paths, KPath, SubsequenceType,
};
pub use tableau::{
    corners, insert, reverse_insert, rs_inverse, rs_pair, shape_of, standard_tableaux,
    StandardTableau,
};
