//! Small hand-checked terrains used across tests, docs and the CLI.

/// One valley between two plateaus at height 2.
pub const VALLEY: &[(i64, i64)] = &[(0, 2), (1, 2), (1, 0), (3, 0), (3, 2), (4, 2)];

/// Three unit steps up.
pub const STAIRS: &[(i64, i64)] = &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2)];

/// A single horizontal edge.
pub const FLAT: &[(i64, i64)] = &[(0, 0), (5, 0)];

/// A 21-vertex terrain on which the right-convex solver makes the sequence of
/// decisions g(v7)=v1, g(v9)=v1, g(v11)=v12, g(v17)=v15, g(v19)=v15,
/// g(v21)=v12 (1-based), walking the chain exactly as narrated for the
/// linear-time solver.
pub const WALKTHROUGH: &[(i64, i64)] = &[
    (0, 12),
    (0, 6),
    (2, 6),
    (2, 2),
    (4, 2),
    (4, 0),
    (6, 0),
    (6, 10),
    (8, 10),
    (8, 14),
    (10, 14),
    (10, 20),
    (12, 20),
    (12, 16),
    (14, 16),
    (14, 8),
    (16, 8),
    (16, 12),
    (18, 12),
    (18, 20),
    (20, 20),
];
