//! The bound-quiver fixtures shipped with the repository, embedded so that
//! library users and tests share one source of truth with the CLI files.

pub const TRIANGLE: &str = include_str!("../../../fixtures/triangle.sq");
pub const FIVEVERTEX: &str = include_str!("../../../fixtures/fivevertex.sq");
pub const PARALLEL: &str = include_str!("../../../fixtures/parallel.sq");
pub const LINE4: &str = include_str!("../../../fixtures/line4.sq");
pub const UMPP7: &str = include_str!("../../../fixtures/umpp7.sq");

pub const ALL: [(&str, &str); 5] = [
    ("triangle", TRIANGLE),
    ("fivevertex", FIVEVERTEX),
    ("parallel", PARALLEL),
    ("line4", LINE4),
    ("umpp7", UMPP7),
];
