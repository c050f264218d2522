//! Binary dump of a hierarchy: a magic number, a format version, then
//! little-endian `u32` arrays.

use std::io::{self, Read, Write};

use thiserror::Error;

use super::{Arc, ArcId, ArcOrigin, ContractionHierarchy};

pub const CH_FILE_MAGIC: [u8; 8] = *b"CHPOTCH\0";
pub const CH_FILE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ChLoadError {
    #[error("not a hierarchy file (bad magic number)")]
    BadMagic,
    #[error("unsupported hierarchy file version {0}, expected {CH_FILE_VERSION}")]
    UnsupportedVersion(u32),
    #[error("corrupt hierarchy file: {0}")]
    Corrupt(&'static str),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn put(out: &mut impl Write, v: u32) -> io::Result<()> {
    out.write_all(&v.to_le_bytes())
}

fn put_all(out: &mut impl Write, vs: &[u32]) -> io::Result<()> {
    put(out, vs.len() as u32)?;
    vs.iter().try_for_each(|&v| put(out, v))
}

fn get(input: &mut impl Read) -> io::Result<u32> {
    let mut buf = [0u8; 4];
    input.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn get_all(input: &mut impl Read) -> io::Result<Vec<u32>> {
    let len = get(input)? as usize;
    (0..len).map(|_| get(input)).collect()
}

const ORIGINAL: u32 = 0;
const SHORTCUT: u32 = 1;

impl ContractionHierarchy {
    pub fn write_to(&self, out: &mut impl Write) -> io::Result<()> {
        out.write_all(&CH_FILE_MAGIC)?;
        put(out, CH_FILE_VERSION)?;
        put(out, self.num_original_edges as u32)?;
        put_all(out, &self.rank)?;
        put_all(out, &self.level)?;
        put(out, self.arcs.len() as u32)?;
        for arc in &self.arcs {
            put(out, arc.tail)?;
            put(out, arc.head)?;
            put(out, arc.weight)?;
            match arc.origin {
                ArcOrigin::Original(e) => [ORIGINAL, e, 0].iter().try_for_each(|&v| put(out, v))?,
                ArcOrigin::Shortcut(a, b) => [SHORTCUT, a, b].iter().try_for_each(|&v| put(out, v))?,
            }
        }
        put_all(out, &self.up_arc)?;
        put_all(out, &self.down_arc)
    }

    pub fn read_from(input: &mut impl Read) -> Result<Self, ChLoadError> {
        let mut magic = [0u8; 8];
        input.read_exact(&mut magic)?;
        if magic != CH_FILE_MAGIC {
            return Err(ChLoadError::BadMagic);
        }
        let version = get(input)?;
        if version != CH_FILE_VERSION {
            return Err(ChLoadError::UnsupportedVersion(version));
        }
        let num_original_edges = get(input)? as usize;
        let rank = get_all(input)?;
        let level = get_all(input)?;
        if rank.len() != level.len() {
            return Err(ChLoadError::Corrupt("rank and level lengths differ"));
        }
        let n = rank.len() as u32;
        let num_arcs = get(input)?;
        let mut arcs = Vec::with_capacity(num_arcs as usize);
        for _ in 0..num_arcs {
            let (tail, head, weight, kind, a, b) = (get(input)?, get(input)?, get(input)?, get(input)?, get(input)?, get(input)?);
            if tail >= n || head >= n {
                return Err(ChLoadError::Corrupt("arc endpoint out of range"));
            }
            let origin = match kind {
                ORIGINAL => ArcOrigin::Original(a),
                SHORTCUT if a < num_arcs && b < num_arcs => ArcOrigin::Shortcut(a, b),
                _ => return Err(ChLoadError::Corrupt("bad arc origin")),
            };
            arcs.push(Arc { tail, head, weight, origin });
        }
        let up: Vec<ArcId> = get_all(input)?;
        let down: Vec<ArcId> = get_all(input)?;
        if up.iter().chain(&down).any(|&a| a >= num_arcs) {
            return Err(ChLoadError::Corrupt("arc id out of range"));
        }
        Ok(ContractionHierarchy::from_arcs(rank, level, arcs, &up, &down, num_original_edges))
    }
}
