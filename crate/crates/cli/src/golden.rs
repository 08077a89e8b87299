//! Reference data the `reproduce` targets compare against.

/// `A_{5,3,6}`, rows `P(5,3,5)`, columns `P(5,3,6)`.
pub const A_5_3_6: [[i64; 6]; 5] = [
    [2, 0, 0, 0, 0, 0],
    [1, 1, 1, 0, 0, 0],
    [0, 1, 0, 1, 1, 0],
    [0, 0, 1, 0, 2, 0],
    [0, 0, 0, 0, 2, 1],
];

/// `A_{5,3,7}`, rows `P(5,3,6)`, columns `P(5,3,7)`.
pub const A_5_3_7: [[i64; 6]; 6] = [
    [1, 1, 0, 0, 0, 0],
    [1, 0, 1, 1, 0, 0],
    [0, 1, 0, 2, 0, 0],
    [0, 0, 2, 0, 1, 0],
    [0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 3],
];

/// Column labels of `A_{6,4,12}`, split after the seventh.
pub const TABLE1_COLS: [&str; 18] = [
    "6,6,0,0", "6,5,1,0", "6,4,2,0", "6,4,1,1", "6,3,3,0", "6,3,2,1", "6,2,2,2", "5,5,2,0",
    "5,5,1,1", "5,4,3,0", "5,4,2,1", "5,3,3,1", "5,3,2,2", "4,4,4,0", "4,4,3,1", "4,4,2,2",
    "4,3,3,2", "3,3,3,3",
];

/// Row labels of `A_{6,4,12}`, split after the fifth.
pub const TABLE1_ROWS: [&str; 16] = [
    "6,5,0,0", "6,4,1,0", "6,3,2,0", "6,3,1,1", "6,2,2,1", "5,5,1,0", "5,4,2,0", "5,4,1,1",
    "5,3,3,0", "5,3,2,1", "5,2,2,2", "4,4,3,0", "4,4,2,1", "4,3,3,1", "4,3,2,2", "3,3,3,2",
];

/// Nullity of `A_{2d−4,d,(d−1)(d−2)+e}^{⪯κ}` with `κ = (2d−4, …, 2, 0, 0)`,
/// one row per `d = 4..=9`, columns `e = 0..=5`.
pub const TABLE2: [(u32, [usize; 6]); 6] = [
    (4, [2, 0, 0, 0, 0, 0]),
    (5, [3, 0, 0, 0, 0, 0]),
    (6, [7, 0, 0, 0, 0, 0]),
    (7, [17, 4, 0, 0, 0, 0]),
    (8, [59, 21, 13, 0, 0, 0]),
    (9, [216, 127, 64, 0, 0, 0]),
];
