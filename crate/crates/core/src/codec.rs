//! Greedy LZ77 over the multilayer index, with γ-coded tokens.
//!
//! Container: `"MLST"`, version byte, model id, window log, original length
//! (u64 little endian), then a MSB-first bit stream. A literal is a `0` flag
//! and eight raw bits; a match is a `1` flag, `γ(length - 1)` and `γ(offset)`.

use memchr::memmem;

use crate::bits::{BitReader, BitWriter};
use crate::cost_model::{gamma_decode, gamma_encode, CostModel};
use crate::error::{Error, Result};
use crate::mlst::MultiIndex;

pub const MAGIC: [u8; 4] = *b"MLST";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 15;
pub const MIN_MATCH: usize = 2;
pub const MAX_WINDOW_LOG: u8 = 30;
pub const DEFAULT_WINDOW_LOG: u8 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Token {
    Literal(u8),
    Match { length: usize, offset: usize },
}

impl Token {
    /// Number of text symbols the token stands for.
    pub fn span(&self) -> usize {
        match *self {
            Token::Literal(_) => 1,
            Token::Match { length, .. } => length,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Header {
    pub model: CostModel,
    pub window_log: u8,
    pub original_len: u64,
}

impl Header {
    pub fn new(model: CostModel, window_log: u8, original_len: u64) -> Result<Self> {
        if window_log > MAX_WINDOW_LOG {
            return Err(Error::BadWindowLog(window_log));
        }
        Ok(Self {
            model,
            window_log,
            original_len,
        })
    }

    /// Window used by the index: `2^window_log`, capped at the input length.
    pub fn window(&self) -> usize {
        let full = 1usize << self.window_log;
        full.min(self.original_len.max(1) as usize)
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.model.id();
        out[6] = self.window_log;
        out[7..].copy_from_slice(&self.original_len.to_le_bytes());
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::Truncated {
                bit: bytes.len() as u64 * 8,
            });
        }
        if bytes[..4] != MAGIC {
            return Err(Error::BadMagic);
        }
        if bytes[4] != VERSION {
            return Err(Error::BadVersion(bytes[4]));
        }
        let model = CostModel::from_id(bytes[5])?;
        let original_len = u64::from_le_bytes(bytes[7..HEADER_LEN].try_into().unwrap());
        Header::new(model, bytes[6], original_len)
    }
}

/// Greedy parse of `text` with a fresh `index`: the longest previous
/// factor at each position becomes a match when it has at least
/// [`MIN_MATCH`] symbols, with the offset reported by the index.
pub fn parse_greedy(index: &mut MultiIndex, text: &[u8]) -> Vec<Token> {
    let mut tokens = Vec::new();
    let step = |index: &mut MultiIndex, tokens: &mut Vec<Token>| {
        let r = index.rep_lpf();
        let token = if r.length >= MIN_MATCH {
            Token::Match {
                length: r.length,
                offset: r.offset,
            }
        } else {
            Token::Literal(text[index.time()])
        };
        index
            .consume(token.span())
            .expect("match lies within the pushed text");
        tokens.push(token);
    };
    for &b in text {
        index.push(b);
        while index.is_settled() && index.time() < index.pushed() {
            step(index, &mut tokens);
        }
    }
    index.finish();
    while index.time() < index.pushed() {
        step(index, &mut tokens);
    }
    tokens
}

/// Serializes `tokens` after `header`, checking every token against the
/// text it would reproduce.
pub fn encode(tokens: &[Token], header: &Header) -> Result<Vec<u8>> {
    let window = header.window();
    let mut out = BitWriter::with_prefix(header.to_bytes().to_vec());
    let mut pos = 0usize;
    for token in tokens {
        match *token {
            Token::Literal(b) => {
                out.write_bit(false);
                out.write_bits(b as u64, 8);
            }
            Token::Match { length, offset } => {
                if length < MIN_MATCH {
                    return Err(Error::InvalidToken(format!(
                        "match length {length} below {MIN_MATCH}"
                    )));
                }
                if offset == 0 || offset > pos.min(window) {
                    return Err(Error::BadOffset {
                        offset: offset as u64,
                        available: pos.min(window) as u64,
                        position: pos as u64,
                    });
                }
                out.write_bit(true);
                gamma_encode(length as u64 - 1, &mut out)?;
                gamma_encode(offset as u64, &mut out)?;
            }
        }
        pos += token.span();
    }
    if pos as u64 != header.original_len {
        return Err(Error::BadLength {
            length: pos as u64,
            remaining: header.original_len,
        });
    }
    Ok(out.finish())
}

/// Decodes tokens from a container without expanding them.
pub fn decode_tokens(bytes: &[u8]) -> Result<(Header, Vec<Token>)> {
    let header = Header::parse(bytes)?;
    let mut tokens = Vec::new();
    walk(bytes, &header, |t| {
        tokens.push(t);
        Ok(())
    })?;
    Ok((header, tokens))
}

/// Reconstructs the original bytes from a container.
pub fn decode(bytes: &[u8]) -> Result<Vec<u8>> {
    let header = Header::parse(bytes)?;
    let mut out = Vec::with_capacity(header.original_len.min(1 << 30) as usize);
    walk(bytes, &header, |token| {
        match token {
            Token::Literal(b) => out.push(b),
            Token::Match { length, offset } => {
                let start = out.len() - offset;
                // byte by byte: the source may overlap the copy
                for k in 0..length {
                    let b = out[start + k];
                    out.push(b);
                }
            }
        }
        Ok(())
    })?;
    Ok(out)
}

fn walk(bytes: &[u8], header: &Header, mut emit: impl FnMut(Token) -> Result<()>) -> Result<()> {
    let mut input = BitReader::new(&bytes[HEADER_LEN..]);
    let total = header.original_len;
    let mut pos = 0u64;
    let at = |bit: u64| bit + HEADER_LEN as u64 * 8;
    let shift = |e: Error| match e {
        Error::Truncated { bit } => Error::Truncated { bit: at(bit) },
        Error::Overflow { bit } => Error::Overflow { bit: at(bit) },
        other => other,
    };
    while pos < total {
        let token = if !input.read_bit().map_err(shift)? {
            Token::Literal(input.read_bits(8).map_err(shift)? as u8)
        } else {
            let length = gamma_decode(&mut input).map_err(shift)?.saturating_add(1);
            let offset = gamma_decode(&mut input).map_err(shift)?;
            if offset > pos {
                return Err(Error::BadOffset {
                    offset,
                    available: pos,
                    position: pos,
                });
            }
            if length > total - pos {
                return Err(Error::BadLength {
                    length,
                    remaining: total - pos,
                });
            }
            Token::Match {
                length: length as usize,
                offset: offset as usize,
            }
        };
        emit(token)?;
        pos += token.span() as u64;
    }
    Ok(())
}

/// Parses and encodes `text` in one go.
pub fn compress(text: &[u8], model: CostModel, window_log: u8) -> Result<Vec<u8>> {
    let header = Header::new(model, window_log, text.len() as u64)?;
    let mut index = MultiIndex::new(model, header.window())?;
    let tokens = parse_greedy(&mut index, text);
    encode(&tokens, &header)
}

pub fn decompress(bytes: &[u8]) -> Result<Vec<u8>> {
    decode(bytes)
}

/// How match offsets are chosen when pricing a greedy parse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Offsets reported by the index.
    Rep,
    /// The closest occurrence, found by scanning.
    RightmostOracle,
    /// The farthest occurrence inside the window, found by scanning.
    Leftmost,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Rep, Strategy::RightmostOracle, Strategy::Leftmost];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Rep => "rep",
            Strategy::RightmostOracle => "rightmost",
            Strategy::Leftmost => "leftmost",
        }
    }
}

/// Offset cost totals for one greedy parse.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bill {
    pub literals: usize,
    pub matches: usize,
    /// Total offset bits per strategy, in [`Strategy::ALL`] order.
    pub offset_bits: [u64; 3],
}

impl Bill {
    pub fn bits(&self, strategy: Strategy) -> u64 {
        self.offset_bits[strategy as usize]
    }
}

/// Greedy parse of `text` priced under every strategy. All strategies
/// share the match lengths of the parse and the window of the index.
pub fn offset_bills(text: &[u8], model: CostModel, window: usize) -> Result<Bill> {
    let mut index = MultiIndex::new(model, window)?;
    let window = index.max_window();
    let tokens = parse_greedy(&mut index, text);
    let mut bill = Bill::default();
    let mut pos = 0usize;
    for token in &tokens {
        if let Token::Match { length, offset } = *token {
            let lo = pos.saturating_sub(window);
            let hay = &text[lo..pos + length - 1];
            let needle = &text[pos..pos + length];
            let rightmost = memmem::rfind(hay, needle).map(|j| pos - (lo + j));
            let leftmost = memmem::find(hay, needle).map(|j| pos - (lo + j));
            let (Some(rightmost), Some(leftmost)) = (rightmost, leftmost) else {
                return Err(Error::InvalidToken(format!(
                    "match at {pos} not found within the window"
                )));
            };
            for (slot, d) in bill
                .offset_bits
                .iter_mut()
                .zip([offset, rightmost, leftmost])
            {
                *slot += model.bitlen(d as u64)? as u64;
            }
            bill.matches += 1;
        } else {
            bill.literals += 1;
        }
        pos += token.span();
    }
    Ok(bill)
}

/// Total offset bits of the greedy parse under one strategy.
pub fn offset_bill(
    text: &[u8],
    strategy: Strategy,
    model: CostModel,
    window: usize,
) -> Result<u64> {
    Ok(offset_bills(text, model, window)?.bits(strategy))
}
