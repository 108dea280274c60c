//! Binary snapshot of a sealed graph.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic    8 bytes  "DEPNETG\0"
//! version  u32      1
//! n        u64      entity count
//! m        u64      edge count
//! n ×      entity   id:str kind:u8 name:str parent:u32 (u32::MAX = none)
//! m ×      edge     src:u32 dst:u32 kind:u8
//! ```
//!
//! `str` is a u32 byte length followed by UTF-8. Entities are stored in id
//! order and edges in (src, dst, kind) order, so equal graphs produce equal
//! bytes. Parent and endpoint fields are entity positions.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{DependencyGraph, EdgeKind, Entity, EntityKind};

pub const MAGIC: [u8; 8] = *b"DEPNETG\0";
pub const VERSION: u32 = 1;

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("not a graph snapshot")]
    BadMagic,
    #[error("unsupported snapshot version {0}")]
    UnsupportedVersion(u32),
    #[error("corrupt snapshot: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn corrupt(msg: impl Into<String>) -> SnapshotError {
    SnapshotError::Corrupt(msg.into())
}

fn write_str<W: Write>(w: &mut W, s: &str) -> io::Result<()> {
    let len = u32::try_from(s.len()).map_err(|_| io::Error::other("string too long"))?;
    w.write_all(&len.to_le_bytes())?;
    w.write_all(s.as_bytes())
}

pub fn write_snapshot<W: Write>(graph: &DependencyGraph, w: W) -> Result<(), SnapshotError> {
    let mut w = BufWriter::new(w);
    w.write_all(&MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(graph.node_count() as u64).to_le_bytes())?;
    w.write_all(&(graph.edge_count() as u64).to_le_bytes())?;
    for (ix, e) in graph.entities().iter().enumerate() {
        write_str(&mut w, &e.id)?;
        w.write_all(&[e.kind as u8])?;
        write_str(&mut w, &e.name)?;
        let parent = graph.parent_index(ix).map_or(NO_PARENT, |p| p as u32);
        w.write_all(&parent.to_le_bytes())?;
    }
    for (s, d, k) in graph.edges() {
        w.write_all(&(s as u32).to_le_bytes())?;
        w.write_all(&(d as u32).to_le_bytes())?;
        w.write_all(&[k as u8])?;
    }
    w.flush()?;
    Ok(())
}

struct Reader<R> {
    inner: R,
}

impl<R: Read> Reader<R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N], SnapshotError> {
        let mut buf = [0u8; N];
        self.inner
            .read_exact(&mut buf)
            .map_err(|e| match e.kind() {
                io::ErrorKind::UnexpectedEof => corrupt("truncated"),
                _ => SnapshotError::Io(e),
            })?;
        Ok(buf)
    }

    fn u8(&mut self) -> Result<u8, SnapshotError> {
        Ok(self.bytes::<1>()?[0])
    }

    fn u32(&mut self) -> Result<u32, SnapshotError> {
        Ok(u32::from_le_bytes(self.bytes()?))
    }

    fn u64(&mut self) -> Result<u64, SnapshotError> {
        Ok(u64::from_le_bytes(self.bytes()?))
    }

    fn string(&mut self) -> Result<String, SnapshotError> {
        let len = self.u32()? as u64;
        let mut buf = Vec::new();
        (&mut self.inner).take(len).read_to_end(&mut buf)?;
        if buf.len() as u64 != len {
            return Err(corrupt("truncated"));
        }
        String::from_utf8(buf).map_err(|_| corrupt("invalid UTF-8"))
    }
}

pub fn read_snapshot<R: Read>(r: R) -> Result<DependencyGraph, SnapshotError> {
    let mut r = Reader {
        inner: BufReader::new(r),
    };
    if r.bytes::<8>().map_err(|_| SnapshotError::BadMagic)? != MAGIC {
        return Err(SnapshotError::BadMagic);
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(SnapshotError::UnsupportedVersion(version));
    }
    let n = r.u64()?;
    let m = r.u64()?;
    if n >= NO_PARENT as u64 {
        return Err(corrupt("too many entities"));
    }
    let n = n as usize;

    // Counts are untrusted, so capacities are capped.
    let mut entities: Vec<Entity> = Vec::with_capacity(n.min(1 << 20));
    let mut parents = Vec::with_capacity(n.min(1 << 20));
    for _ in 0..n {
        let id = r.string()?;
        let kind = *EntityKind::ALL
            .get(r.u8()? as usize)
            .ok_or_else(|| corrupt("bad entity kind"))?;
        let name = r.string()?;
        let parent = r.u32()?;
        if let Some(prev) = entities.last() {
            if prev.id >= id {
                return Err(corrupt("entities out of order"));
            }
        }
        entities.push(Entity {
            id,
            kind,
            name,
            parent: None,
        });
        parents.push((parent != NO_PARENT).then_some(parent));
    }
    for ix in 0..n {
        if let Some(p) = parents[ix] {
            let p = p as usize;
            if p >= n || p == ix {
                return Err(corrupt("bad parent index"));
            }
            entities[ix].parent = Some(entities[p].id.clone());
        }
    }

    let mut edges = Vec::with_capacity((m as usize).min(1 << 24));
    for _ in 0..m {
        let s = r.u32()?;
        let d = r.u32()?;
        let kind = EdgeKind::from_u8(r.u8()?).ok_or_else(|| corrupt("bad edge kind"))?;
        if s as usize >= n || d as usize >= n || s == d {
            return Err(corrupt("bad edge endpoint"));
        }
        edges.push((s, d, kind));
    }
    if r.inner.read(&mut [0u8; 1])? != 0 {
        return Err(corrupt("trailing bytes"));
    }
    Ok(DependencyGraph::from_sorted_parts(entities, parents, edges))
}

pub fn save_snapshot(graph: &DependencyGraph, path: &Path) -> Result<(), SnapshotError> {
    write_snapshot(graph, File::create(path)?)
}

pub fn load_snapshot(path: &Path) -> Result<DependencyGraph, SnapshotError> {
    read_snapshot(File::open(path)?)
}
