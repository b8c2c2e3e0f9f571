//! Published reference rows shared by the integration tests.
#![allow(dead_code)]

/// Even rows with n ≤ 100: (n, variables, constraints, objective).
pub const EVEN_TABLE: &[(usize, usize, usize, f64)] = &[
    (4, 6, 5, 0.500000),
    (6, 10, 14, 0.674981),
    (8, 14, 27, 0.726868),
    (10, 18, 44, 0.749137),
    (12, 22, 65, 0.760730),
    (14, 26, 90, 0.767531),
    (16, 30, 119, 0.771861),
    (18, 34, 152, 0.774788),
    (20, 38, 189, 0.776859),
    (24, 46, 275, 0.779524),
    (28, 54, 377, 0.781111),
    (32, 62, 495, 0.782133),
    (36, 70, 629, 0.782828),
    (40, 78, 779, 0.783323),
    (44, 86, 945, 0.783687),
    (48, 94, 1127, 0.783964),
    (52, 102, 1325, 0.784178),
    (56, 110, 1539, 0.784252),
    (60, 118, 1769, 0.784408),
    (70, 138, 2414, 0.784729),
    (80, 158, 3159, 0.784886),
    (90, 178, 4004, 0.784994),
    (100, 198, 4949, 0.785072),
];

/// Odd rows with n ≤ 100: (n, variables, constraints, objective).
pub const ODD_TABLE: &[(usize, usize, usize, f64)] = &[
    (3, 4, 2, 0.433013),
    (5, 8, 9, 0.657164),
    (7, 12, 20, 0.719741),
    (9, 16, 35, 0.745619),
    (11, 20, 54, 0.758748),
    (13, 24, 77, 0.760920),
    (15, 28, 104, 0.771056),
    (17, 32, 135, 0.774230),
    (19, 36, 170, 0.774632),
    (23, 44, 252, 0.778297),
    (27, 52, 350, 0.780369),
    (31, 60, 464, 0.781646),
    (35, 68, 594, 0.782492),
    (39, 76, 740, 0.783081),
    (43, 84, 902, 0.783508),
    (47, 92, 1080, 0.783827),
    (51, 100, 1274, 0.784071),
    (55, 108, 1484, 0.784331),
    (59, 116, 1710, 0.784416),
    (69, 136, 2345, 0.784686),
    (79, 156, 3080, 0.784854),
    (89, 176, 3915, 0.784975),
    (99, 196, 4850, 0.785057),
];

pub fn even_objective(n: usize) -> f64 {
    EVEN_TABLE.iter().find(|row| row.0 == n).map(|row| row.3).expect("tabulated n")
}
