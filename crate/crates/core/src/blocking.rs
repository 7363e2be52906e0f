//! Text blocking: a message grid is cut into 2×2 blocks and each block is
//! sent as its determinant plus three of its four entries. The withheld
//! entry `b2` is recovered at the receiver from the coded block.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::codec::det_sign;
use crate::error::{Error, Result};
use crate::matrix::{g_matrix, p_power, IntMatrix};

pub const ALPHABET: [char; 29] = [
    'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'J', 'K', 'L', 'M', 'N', 'O', 'P', 'Q', 'R', 'S', 'T', 'U', 'V', 'W',
    'X', 'Y', 'Z', '0', ':', ')',
];

/// Symbol used for spaces and padding.
pub const FILLER: char = '0';

const MODULUS: u32 = 29;

/// The mod-29 character table; the last symbol `)` takes the value `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharTable {
    n: u32,
}

impl CharTable {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("table offset n must be at least 1"));
        }
        Ok(CharTable { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self, symbol: char) -> Option<u32> {
        let index = ALPHABET.iter().position(|&s| s == symbol)? as u32;
        Some((self.n % MODULUS + 28 - index) % MODULUS)
    }

    pub fn symbol(&self, value: u32) -> Option<char> {
        if value >= MODULUS {
            return None;
        }
        Some(ALPHABET[((self.n % MODULUS + 28 + MODULUS - value) % MODULUS) as usize])
    }
}

pub fn char_value(symbol: char, table: &CharTable) -> Result<u32> {
    table.value(symbol).ok_or(Error::UnknownSymbol { symbol, position: 0 })
}

pub fn value_char(value: u32, table: &CharTable) -> Result<char> {
    table.symbol(value).ok_or(Error::ValueOutOfRange(value))
}

/// A square grid of alphabet symbols with even side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolGrid {
    side: usize,
    symbols: Vec<char>,
}

impl SymbolGrid {
    pub fn new(side: usize, symbols: Vec<char>) -> Result<Self> {
        if side == 0 || !side.is_multiple_of(2) {
            return Err(Error::Domain("grid side must be even and positive"));
        }
        if symbols.len() != side * side {
            return Err(Error::DimensionMismatch { expected: (side, side), found: (symbols.len(), 1) });
        }
        if let Some((position, &symbol)) = symbols.iter().enumerate().find(|(_, s)| !ALPHABET.contains(s)) {
            return Err(Error::UnknownSymbol { symbol, position });
        }
        Ok(SymbolGrid { side, symbols })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn get(&self, row: usize, col: usize) -> char {
        self.symbols[row * self.side + col]
    }

    /// Number of 2×2 blocks.
    pub fn block_count(&self) -> usize {
        (self.side / 2) * (self.side / 2)
    }

    /// Row-major concatenation of all symbols.
    pub fn to_text(&self) -> String {
        self.symbols.iter().collect()
    }
}

impl fmt::Display for SymbolGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.symbols.chunks(self.side) {
            for (i, s) in row.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{s}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Uppercases, maps spaces to `'0'`, and lays the symbols out row-major in
/// the smallest even-side square, padding with `'0'`.
pub fn text_to_grid(text: &str) -> Result<SymbolGrid> {
    let mut symbols = Vec::new();
    for (position, ch) in text.chars().enumerate() {
        let up = if ch == ' ' { FILLER } else { ch.to_ascii_uppercase() };
        if !ALPHABET.contains(&up) {
            return Err(Error::UnknownSymbol { symbol: ch, position });
        }
        symbols.push(up);
    }
    if symbols.is_empty() {
        return Err(Error::Domain("text is empty"));
    }
    let mut side = 2;
    while side * side < symbols.len() {
        side += 2;
    }
    symbols.resize(side * side, FILLER);
    SymbolGrid::new(side, symbols)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockMode {
    Pell,
    GeneralizedPell,
}

impl BlockMode {
    /// Short name used in file headers.
    pub fn name(self) -> &'static str {
        match self {
            BlockMode::Pell => "pell",
            BlockMode::GeneralizedPell => "gpell",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "pell" => Some(BlockMode::Pell),
            "gpell" => Some(BlockMode::GeneralizedPell),
            _ => None,
        }
    }
}

impl fmt::Display for BlockMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Pell mode: 3 for up to three blocks, else `⌊b/2⌋`. Generalized: `p + 2`.
pub fn choose_n(mode: BlockMode, blocks: usize, p: u32) -> u32 {
    match mode {
        BlockMode::Pell if blocks <= 3 => 3,
        BlockMode::Pell => u32::try_from(blocks / 2).unwrap_or(u32::MAX),
        BlockMode::GeneralizedPell => p + 2,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockRecord {
    pub d: BigInt,
    pub b1: BigInt,
    pub b3: BigInt,
    pub b4: BigInt,
}

impl BlockRecord {
    pub fn new(d: impl Into<BigInt>, b1: impl Into<BigInt>, b3: impl Into<BigInt>, b4: impl Into<BigInt>) -> Self {
        BlockRecord { d: d.into(), b1: b1.into(), b3: b3.into(), b4: b4.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPackage {
    mode: BlockMode,
    p: u32,
    n: u32,
    side: usize,
    records: Vec<BlockRecord>,
}

impl KPackage {
    pub fn new(mode: BlockMode, p: u32, n: u32, side: usize, records: Vec<BlockRecord>) -> Result<Self> {
        if p != 1 {
            return Err(Error::Unsupported("blocking is defined for p = 1 only"));
        }
        if side == 0 || !side.is_multiple_of(2) {
            return Err(Error::InvalidPackage("side must be even and positive"));
        }
        let blocks = (side / 2) * (side / 2);
        if records.len() != blocks {
            return Err(Error::InvalidPackage("record count does not match side"));
        }
        if n != choose_n(mode, blocks, p) {
            return Err(Error::InvalidPackage("n is inconsistent with the mode rule"));
        }
        Ok(KPackage { mode, p, n, side, records })
    }

    pub fn mode(&self) -> BlockMode {
        self.mode
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn records(&self) -> &[BlockRecord] {
        &self.records
    }

    /// The matrix the coded blocks are multiplied by.
    pub fn transform(&self) -> Result<IntMatrix> {
        match self.mode {
            BlockMode::Pell => p_power(self.n),
            BlockMode::GeneralizedPell => g_matrix(self.p, self.n),
        }
    }

    /// `(−1)^n` in Pell mode, `(−1)^{n(p+2)}` in generalized mode.
    pub fn sign(&self) -> BigInt {
        match self.mode {
            BlockMode::Pell => pell_sign(self.n),
            BlockMode::GeneralizedPell => det_sign(self.p, self.n),
        }
    }
}

fn pell_sign(n: u32) -> BigInt {
    BigInt::from(if n.is_multiple_of(2) { 1 } else { -1 })
}

/// Blocks of the grid, left to right and top to bottom, as `[b1, b2, b3, b4]`.
fn blocks_of(values: &[u32], side: usize) -> Vec<[u32; 4]> {
    let half = side / 2;
    let mut out = Vec::with_capacity(half * half);
    for br in 0..half {
        for bc in 0..half {
            let at = |r: usize, c: usize| values[(2 * br + r) * side + 2 * bc + c];
            out.push([at(0, 0), at(0, 1), at(1, 0), at(1, 1)]);
        }
    }
    out
}

pub fn block_encode(text: &str, mode: BlockMode, p: u32) -> Result<KPackage> {
    if p != 1 {
        return Err(Error::Unsupported("blocking is defined for p = 1 only"));
    }
    let grid = text_to_grid(text)?;
    let n = choose_n(mode, grid.block_count(), p);
    let table = CharTable::new(n)?;
    let values: Vec<u32> =
        grid.symbols().iter().map(|&s| table.value(s).expect("grid holds alphabet symbols")).collect();
    let mut records = Vec::with_capacity(grid.block_count());
    for (block, [b1, b2, b3, b4]) in blocks_of(&values, grid.side()).into_iter().enumerate() {
        if b3 == 0 {
            return Err(Error::UnrecoverableBlock { block: block + 1 });
        }
        let d = i64::from(b1) * i64::from(b4) - i64::from(b2) * i64::from(b3);
        records.push(BlockRecord::new(d, b1, b3, b4));
    }
    KPackage::new(mode, p, n, grid.side(), records)
}

/// Solves `sign·d = e4·(T11·b1 + T21·x) − e3·(T12·b1 + T22·x)` for `x`,
/// where `e3 = T11·b3 + T21·b4` and `e4 = T12·b3 + T22·b4`.
pub fn solve_block_x(record: &BlockRecord, transform: &IntMatrix, sign: &BigInt) -> Result<BigInt> {
    if transform.rows() != 2 || transform.cols() != 2 {
        return Err(Error::DimensionMismatch { expected: (2, 2), found: (transform.rows(), transform.cols()) });
    }
    let t = |r: usize, c: usize| &transform[(r, c)];
    let e3 = t(0, 0) * &record.b3 + t(1, 0) * &record.b4;
    let e4 = t(0, 1) * &record.b3 + t(1, 1) * &record.b4;
    let coeff = &e4 * t(1, 0) - &e3 * t(1, 1);
    let rest = &record.b1 * (&e4 * t(0, 0) - &e3 * t(0, 1));
    if coeff.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let (x, r) = (sign * &record.d - rest).div_rem(&coeff);
    if !r.is_zero() {
        return Err(Error::Domain("step-5 equation has no integer solution"));
    }
    Ok(x)
}

/// Recovered `b2` values and the reassembled grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecoding {
    pub x: Vec<u32>,
    pub grid: SymbolGrid,
}

pub fn block_decode_detailed(k: &KPackage) -> Result<BlockDecoding> {
    let transform = k.transform()?;
    let sign = k.sign();
    let table = CharTable::new(k.n)?;
    let half = k.side / 2;
    let mut symbols = alloc::vec![FILLER; k.side * k.side];
    let mut xs = Vec::with_capacity(k.records.len());
    for (i, rec) in k.records.iter().enumerate() {
        let block = i + 1;
        if rec.b3.is_zero() {
            return Err(Error::UnrecoverableBlock { block });
        }
        let corrupted = Error::CorruptedBlock { block };
        let x = solve_block_x(rec, &transform, &sign).map_err(|_| corrupted.clone())?;
        let (reduced, r) = (&rec.b1 * &rec.b4 - &rec.d).div_rem(&rec.b3);
        if !r.is_zero() || reduced != x {
            return Err(corrupted);
        }
        let mut vals = [0u32; 4];
        for (slot, v) in vals.iter_mut().zip([&rec.b1, &x, &rec.b3, &rec.b4]) {
            *slot = v.to_u32().filter(|v| *v < MODULUS).ok_or(corrupted.clone())?;
        }
        let (br, bc) = (i / half, i % half);
        for (j, v) in vals.iter().enumerate() {
            let (r, c) = (2 * br + j / 2, 2 * bc + j % 2);
            symbols[r * k.side + c] = table.symbol(*v).expect("value below 29");
        }
        xs.push(vals[1]);
    }
    Ok(BlockDecoding { x: xs, grid: SymbolGrid::new(k.side, symbols)? })
}

/// Decodes to the row-major symbol string, with `'0'` kept verbatim.
pub fn block_decode(k: &KPackage) -> Result<String> {
    Ok(block_decode_detailed(k)?.grid.to_text())
}

/// Replaces interior runs of `'0'` with single spaces and drops trailing
/// padding.
pub fn render_spaces(text: &str) -> String {
    let trimmed = text.trim_end_matches(FILLER);
    let mut out = String::with_capacity(trimmed.len());
    let mut in_run = false;
    for ch in trimmed.chars() {
        if ch == FILLER {
            if !in_run {
                out.push(' ');
            }
            in_run = true;
        } else {
            out.push(ch);
            in_run = false;
        }
    }
    out
}
