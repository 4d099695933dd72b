use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use super::{read_flo, read_mask, write_flo, write_mask_pgm, FlowField, ForegroundMask};
use crate::error::{Error, Result};

/// Frames read from disk, in frame-number order.
#[derive(Debug, Clone)]
pub struct LoadedSequence {
    pub frames: Vec<(FlowField, ForegroundMask)>,
    pub flow_paths: Vec<PathBuf>,
    /// True when no mask files were found and full-frame masks were used.
    pub masks_defaulted: bool,
}

/// Frame number of a file: the last run of digits in its stem.
pub fn frame_number(path: &Path) -> Option<u64> {
    let stem = path.file_stem()?.to_str()?;
    let end = stem.rfind(|c: char| c.is_ascii_digit())? + 1;
    let start = stem[..end].rfind(|c: char| !c.is_ascii_digit()).map_or(0, |i| i + 1);
    stem[start..end].parse().ok()
}

fn numbered_files(dir: &Path, extensions: &[&str]) -> Result<BTreeMap<u64, PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| corpus(dir, format!("cannot read directory: {e}")))?;
    let mut out = BTreeMap::new();
    for entry in entries {
        let path = entry?.path();
        let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
        if !ext.is_some_and(|e| extensions.contains(&e.as_str())) || !path.is_file() {
            continue;
        }
        let Some(n) = frame_number(&path) else {
            return Err(corpus(&path, "file name carries no frame number".into()));
        };
        if let Some(prev) = out.insert(n, path.clone()) {
            return Err(corpus(&path, format!("frame number {n} also used by {}", prev.display())));
        }
    }
    Ok(out)
}

fn corpus(path: &Path, reason: String) -> Error {
    Error::CorpusFormat { path: path.to_path_buf(), reason }
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| corpus(path, e.to_string()))
}

/// Reads numbered `.flo` files from `flow_dir` and the matching `.pgm`/`.pbm`
/// masks from `mask_dir` (or `flow_dir` itself when `None`).
///
/// Masks are matched by frame number. When the mask directory holds no mask
/// files at all, every frame gets a full-frame mask.
pub fn load_sequence(flow_dir: &Path, mask_dir: Option<&Path>) -> Result<LoadedSequence> {
    let flows = numbered_files(flow_dir, &["flo"])?;
    if flows.is_empty() {
        return Err(corpus(flow_dir, "no flow frames found".into()));
    }
    let masks = numbered_files(mask_dir.unwrap_or(flow_dir), &["pgm", "pbm"])?;
    let masks_defaulted = masks.is_empty();

    let mut frames = Vec::with_capacity(flows.len());
    let mut flow_paths = Vec::with_capacity(flows.len());
    for (n, path) in flows {
        let field = read_flo(&read_file(&path)?).map_err(|e| corpus(&path, e.to_string()))?;
        let mask = if masks_defaulted {
            ForegroundMask::full(field.width(), field.height())
        } else {
            let mpath = masks
                .get(&n)
                .ok_or_else(|| corpus(&path, format!("no mask with frame number {n}")))?;
            let mask = read_mask(&read_file(mpath)?).map_err(|e| corpus(mpath, e.to_string()))?;
            if (mask.width(), mask.height()) != (field.width(), field.height()) {
                return Err(corpus(
                    mpath,
                    format!(
                        "mask is {}x{} but flow is {}x{}",
                        mask.width(),
                        mask.height(),
                        field.width(),
                        field.height()
                    ),
                ));
            }
            mask
        };
        frames.push((field, mask));
        flow_paths.push(path);
    }
    Ok(LoadedSequence { frames, flow_paths, masks_defaulted })
}

/// Writes `flow_NNNN.flo` and `mask_NNNN.pgm` for every frame into `dir`.
pub fn save_sequence(dir: &Path, frames: &[(FlowField, ForegroundMask)]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| corpus(dir, format!("cannot create directory: {e}")))?;
    for (i, (field, mask)) in frames.iter().enumerate() {
        let fp = dir.join(format!("flow_{i:04}.flo"));
        std::fs::write(&fp, write_flo(field)).map_err(|e| corpus(&fp, e.to_string()))?;
        let mp = dir.join(format!("mask_{i:04}.pgm"));
        std::fs::write(&mp, write_mask_pgm(mask)).map_err(|e| corpus(&mp, e.to_string()))?;
    }
    Ok(())
}
