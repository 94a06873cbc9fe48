//! Knot diagrams in PD form and the presentations read off them.
//!
//! A tuple `X a b c d` lists edge labels counterclockwise starting at the incoming
//! under-strand. The over-strand runs `d -> b` at a positive crossing and `b -> d` at a
//! negative one; direction is recovered from where each edge enters and leaves, falling
//! back to label order for strands that never pass under.

mod pd;
mod wirtinger;

pub use pd::{parse_pd, Crossing, Diagram};
pub use wirtinger::{arcs_of, crossing_relators, longitude_word, mirror_presentation, wirtinger, wirtinger_with};
pub(crate) use wirtinger::arc_name;

/// PD codes used throughout tests and examples.
pub mod catalog {
    pub const UNKNOT_TWISTED: &str = "X 1 2 2 3 / X 3 1 4 4";
    pub const TREFOIL: &str = "X 1 4 2 5 / X 3 6 4 1 / X 5 2 6 3";
    pub const FIGURE_EIGHT: &str = "X 4 2 5 1 / X 8 6 1 5 / X 6 3 7 4 / X 2 7 3 8";
    pub const CINQUEFOIL: &str = "X 1 6 2 7 / X 3 8 4 9 / X 5 10 6 1 / X 7 2 8 3 / X 9 4 10 5";
}
