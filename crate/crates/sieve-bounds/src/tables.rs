//! Threshold tables for the direct four- and five-block decomposition
//! tests. Each row lists divisors `(c3, c4[, c5], cr)`; a sorted tuple
//! `(s1 >= s2 >= ...)` passes a row when `s1 >= (1-theta)`,
//! `s2 >= (1-theta)/2`, `s_i >= (1-theta)/c_i` for the listed entries and
//! the residual mass `1 - sum` is at least `2*(1-theta)/cr`.

/// Rows for four-part tuples: `(c3, c4, cr)`.
pub const FOUR_PART_ROWS: [(f64, f64, f64); 9] = [
    (3.0, 7.0, 83.0),
    (3.0, 8.0, 47.0),
    (3.0, 9.0, 35.0),
    (3.0, 10.0, 29.0),
    (3.0, 12.0, 23.0),
    (4.0, 5.0, 39.0),
    (4.0, 6.0, 23.0),
    (4.0, 8.0, 15.0),
    (5.0, 5.0, 19.0),
];

/// Rows for five-part tuples: `(c3, c4, c5, cr)`.
pub const FIVE_PART_ROWS: [(f64, f64, f64, f64); 87] = [
    (3.0, 7.0, 43.0, 3611.0),
    (3.0, 7.0, 44.0, 1847.0),
    (3.0, 7.0, 45.0, 1259.0),
    (3.0, 7.0, 46.0, 965.0),
    (3.0, 7.0, 48.0, 671.0),
    (3.0, 7.0, 49.0, 587.0),
    (3.0, 7.0, 51.0, 475.0),
    (3.0, 7.0, 54.0, 377.0),
    (3.0, 7.0, 56.0, 335.0),
    (3.0, 7.0, 60.0, 279.0),
    (3.0, 7.0, 63.0, 251.0),
    (3.0, 7.0, 70.0, 209.0),
    (3.0, 7.0, 78.0, 181.0),
    (3.0, 7.0, 84.0, 167.0),
    (3.0, 8.0, 25.0, 1199.0),
    (3.0, 8.0, 26.0, 623.0),
    (3.0, 8.0, 27.0, 431.0),
    (3.0, 8.0, 28.0, 335.0),
    (3.0, 8.0, 30.0, 239.0),
    (3.0, 8.0, 32.0, 191.0),
    (3.0, 8.0, 33.0, 175.0),
    (3.0, 8.0, 36.0, 143.0),
    (3.0, 8.0, 40.0, 119.0),
    (3.0, 8.0, 42.0, 111.0),
    (3.0, 8.0, 48.0, 95.0),
    (3.0, 9.0, 19.0, 683.0),
    (3.0, 9.0, 20.0, 359.0),
    (3.0, 9.0, 21.0, 251.0),
    (3.0, 9.0, 22.0, 197.0),
    (3.0, 9.0, 24.0, 143.0),
    (3.0, 9.0, 27.0, 107.0),
    (3.0, 9.0, 30.0, 89.0),
    (3.0, 9.0, 36.0, 71.0),
    (3.0, 10.0, 16.0, 479.0),
    (3.0, 10.0, 18.0, 179.0),
    (3.0, 10.0, 20.0, 119.0),
    (3.0, 10.0, 24.0, 79.0),
    (3.0, 10.0, 30.0, 59.0),
    (3.0, 11.0, 14.0, 461.0),
    (3.0, 11.0, 15.0, 219.0),
    (3.0, 11.0, 22.0, 65.0),
    (3.0, 12.0, 13.0, 311.0),
    (3.0, 12.0, 14.0, 167.0),
    (3.0, 12.0, 15.0, 119.0),
    (3.0, 12.0, 16.0, 95.0),
    (3.0, 12.0, 18.0, 71.0),
    (3.0, 12.0, 20.0, 59.0),
    (3.0, 12.0, 21.0, 55.0),
    (3.0, 13.0, 13.0, 155.0),
    (3.0, 14.0, 15.0, 69.0),
    (3.0, 14.0, 21.0, 41.0),
    (3.0, 15.0, 15.0, 59.0),
    (3.0, 15.0, 20.0, 39.0),
    (4.0, 5.0, 21.0, 839.0),
    (4.0, 5.0, 22.0, 439.0),
    (4.0, 5.0, 24.0, 239.0),
    (4.0, 5.0, 25.0, 199.0),
    (4.0, 5.0, 28.0, 139.0),
    (4.0, 5.0, 30.0, 119.0),
    (4.0, 5.0, 36.0, 89.0),
    (4.0, 5.0, 40.0, 79.0),
    (4.0, 6.0, 13.0, 311.0),
    (4.0, 6.0, 14.0, 167.0),
    (4.0, 6.0, 15.0, 119.0),
    (4.0, 6.0, 16.0, 95.0),
    (4.0, 6.0, 18.0, 71.0),
    (4.0, 6.0, 20.0, 59.0),
    (4.0, 6.0, 21.0, 55.0),
    (4.0, 6.0, 24.0, 47.0),
    (4.0, 7.0, 10.0, 279.0),
    (4.0, 7.0, 14.0, 55.0),
    (4.0, 8.0, 9.0, 143.0),
    (4.0, 8.0, 10.0, 79.0),
    (4.0, 8.0, 16.0, 31.0),
    (4.0, 9.0, 9.0, 71.0),
    (5.0, 5.0, 11.0, 219.0),
    (5.0, 5.0, 12.0, 119.0),
    (5.0, 5.0, 14.0, 69.0),
    (5.0, 5.0, 15.0, 59.0),
    (5.0, 6.0, 8.0, 239.0),
    (5.0, 6.0, 9.0, 89.0),
    (5.0, 6.0, 10.0, 59.0),
    (5.0, 6.0, 15.0, 29.0),
    (5.0, 7.0, 7.0, 139.0),
    (6.0, 7.0, 7.0, 41.0),
    (6.0, 9.0, 9.0, 17.0),
    (7.0, 7.0, 7.0, 27.0),
];
