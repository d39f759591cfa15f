//! Expected tables of β^{l-i,2i}(X(F_2^n)), rows l and columns i.

use std::fmt::Write;

use unicomplex::tor::BettiTable;

pub struct Expected {
    pub n: usize,
    /// (l, i, value); every other cell with l >= 1 and i >= 1 is zero.
    pub cells: &'static [(usize, usize, u64)],
}

pub const X2_3: Expected = Expected {
    n: 3,
    cells: &[(2, 3, 7), (3, 4, 7), (3, 5, 42), (3, 6, 42), (3, 7, 13)],
};

pub const X2_4: Expected = Expected {
    n: 4,
    cells: &[
        (2, 3, 35),
        (3, 4, 105),
        (3, 5, 630),
        (3, 6, 630),
        (3, 7, 195),
        (4, 5, 168),
        (4, 6, 4480),
        (4, 7, 27420),
        (4, 8, 79695),
        (4, 9, 140140),
        (4, 10, 163548),
        (4, 11, 130725),
        (4, 12, 71225),
        (4, 13, 25410),
        (4, 14, 5370),
        (4, 15, 511),
    ],
};

/// Rows 1..=rows, columns 1..=cols, same shape as the printed tables.
pub fn render(table: &BettiTable, rows: usize, cols: usize) -> String {
    let cell = |l: usize, i: usize| table.layout_get(l, i).to_string();
    let width = (1..=rows)
        .flat_map(|l| (1..=cols).map(move |i| (l, i)))
        .map(|(l, i)| cell(l, i).len())
        .max()
        .unwrap_or(1)
        .max(cols.to_string().len());
    let mut out = String::new();
    write!(out, "l\\i |").unwrap();
    for i in 1..=cols {
        write!(out, " {i:>width$}").unwrap();
    }
    out.push('\n');
    for l in 1..=rows {
        write!(out, "{l:>3} |").unwrap();
        for i in 1..=cols {
            write!(out, " {:>width$}", cell(l, i)).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Cells that differ from the expected table, as (l, i, expected, found).
pub fn diff(table: &BettiTable, expected: &Expected) -> Vec<(usize, usize, u64, String)> {
    let cols = (1usize << expected.n) - 1;
    let mut out = Vec::new();
    for l in 1..=expected.n {
        for i in 1..=cols {
            let want = expected
                .cells
                .iter()
                .find(|c| c.0 == l && c.1 == i)
                .map_or(0, |c| c.2);
            let got = table.layout_get(l, i).to_string();
            if got != want.to_string() {
                out.push((l, i, want, got));
            }
        }
    }
    // outside the printed rows only β^{0,0} = 1 may be nonzero
    for (&(i, j), x) in table.iter() {
        let l = j - i;
        let beta00 = i == 0 && j == 0 && x.to_string() == "1";
        if (l == 0 && !beta00) || l > expected.n {
            out.push((l, j, 0, x.to_string()));
        }
    }
    out
}
