//! Backbone extraction from fixed-column PDB text.

use crate::geometry::{scaled_cm_flat, Point, Realization, DEGENERACY_THRESHOLD};
use crate::instance::DmdgpInstance;

use super::GenioError;

const BACKBONE: [&str; 3] = ["N", "CA", "C"];

const STANDARD_RESIDUES: [&str; 20] = [
    "ALA", "ARG", "ASN", "ASP", "CYS", "GLN", "GLU", "GLY", "HIS", "ILE", "LEU", "LYS", "MET",
    "PHE", "PRO", "SER", "THR", "TRP", "TYR", "VAL",
];

#[derive(Debug, Clone, PartialEq)]
pub struct AtomRecord {
    pub serial: u32,
    pub name: String,
    pub residue_name: String,
    pub residue_seq: i32,
    pub chain: char,
    pub model: u32,
    pub position: Point,
}

/// Backbone atoms of the first model and chain, in file order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawStructure {
    pub atoms: Vec<AtomRecord>,
}

impl RawStructure {
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn realization(&self) -> Realization {
        let pts: Vec<&[f64]> = self.atoms.iter().map(|a| a.position.coords()).collect();
        Realization::from_points(3, &pts).expect("three coordinates per atom")
    }
}

fn column(line: &str, lineno: usize, from: usize, to: usize) -> Result<&str, GenioError> {
    line.get(from - 1..to).ok_or_else(|| GenioError::Pdb {
        line: lineno,
        message: format!("record shorter than column {to}"),
    })
}

fn number<T: std::str::FromStr>(
    line: &str,
    lineno: usize,
    from: usize,
    to: usize,
    what: &str,
) -> Result<T, GenioError> {
    let raw = column(line, lineno, from, to)?.trim();
    raw.parse().map_err(|_| GenioError::Pdb {
        line: lineno,
        message: format!("bad {what} `{raw}` in columns {from}-{to}"),
    })
}

pub fn parse_pdb(text: &str) -> Result<RawStructure, GenioError> {
    let mut atoms = Vec::new();
    let mut model: u32 = 1;
    let mut chain: Option<char> = None;
    let (mut hetatm, mut insertions, mut nonstandard) = (0usize, 0usize, 0usize);
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let record = line.get(..6).unwrap_or(line).trim_end();
        match record {
            "MODEL" => {
                model = line
                    .get(10..)
                    .and_then(|s| s.trim().parse().ok())
                    .unwrap_or(model);
                continue;
            }
            "ENDMDL" => break,
            "HETATM" => {
                hetatm += 1;
                continue;
            }
            "ATOM" => {}
            _ => continue,
        }
        let alt = column(line, lineno, 17, 17)?;
        if alt != " " && alt != "A" {
            continue;
        }
        let chain_id = column(line, lineno, 22, 22)?.chars().next().unwrap_or(' ');
        match chain {
            None => chain = Some(chain_id),
            Some(c) if c != chain_id => continue,
            Some(_) => {}
        }
        let name = column(line, lineno, 13, 16)?.trim();
        if !BACKBONE.contains(&name) {
            continue;
        }
        if column(line, lineno, 27, 27)? != " " {
            insertions += 1;
            continue;
        }
        let residue_name = column(line, lineno, 18, 20)?.trim().to_string();
        if !STANDARD_RESIDUES.contains(&residue_name.as_str()) {
            nonstandard += 1;
            continue;
        }
        let serial = number(line, lineno, 7, 11, "atom serial")?;
        let residue_seq = number(line, lineno, 23, 26, "residue number")?;
        let x: f64 = number(line, lineno, 31, 38, "x coordinate")?;
        let y: f64 = number(line, lineno, 39, 46, "y coordinate")?;
        let z: f64 = number(line, lineno, 47, 54, "z coordinate")?;
        atoms.push(AtomRecord {
            serial,
            name: name.to_string(),
            residue_name,
            residue_seq,
            chain: chain_id,
            model,
            position: Point::new(vec![x, y, z]),
        });
    }
    if hetatm > 0 {
        log::warn!("skipped {hetatm} HETATM records");
    }
    if insertions > 0 {
        log::warn!("skipped {insertions} backbone atoms with insertion codes");
    }
    if nonstandard > 0 {
        log::warn!("skipped {nonstandard} backbone atoms of non-standard residues");
    }
    if atoms.is_empty() {
        return Err(GenioError::EmptyStructure);
    }
    Ok(RawStructure { atoms })
}

/// A window of consecutive atoms whose scaled Cayley-Menger value is below
/// the degeneracy threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyWarning {
    pub vertices: Vec<usize>,
    pub scaled: f64,
}

#[derive(Debug, Clone)]
pub struct BackboneInstance {
    pub instance: DmdgpInstance,
    pub coordinates: Realization,
    pub warnings: Vec<DegeneracyWarning>,
}

/// K = 3 instance over the backbone: every pair at most three bonds apart
/// plus every farther pair strictly closer than `cutoff`.
pub fn build_instance(structure: &RawStructure, cutoff: f64) -> Result<BackboneInstance, GenioError> {
    const K: usize = 3;
    let n = structure.len();
    if n <= K {
        return Err(GenioError::Config(format!("need at least 4 atoms, found {n}")));
    }
    let x = structure.realization();
    let mut warnings = Vec::new();
    for last in K..=n {
        for count in [K, K + 1] {
            if last < count {
                continue;
            }
            let first = last + 1 - count;
            let scaled = scaled_cm_flat(K, count, x.span(first, last));
            if scaled < DEGENERACY_THRESHOLD {
                let vertices: Vec<usize> = (first..=last).collect();
                log::warn!("degenerate backbone window {vertices:?} (scaled CM {scaled:e})");
                warnings.push(DegeneracyWarning { vertices, scaled });
            }
        }
    }
    let mut edges = Vec::new();
    for j in 2..=n {
        for i in 1..j {
            let d = x.distance(i, j);
            if j - i <= K || d < cutoff {
                edges.push(((i, j), d));
            }
        }
    }
    let instance = DmdgpInstance::new(n, K, edges)?;
    Ok(BackboneInstance {
        instance,
        coordinates: x,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(serial: u32, name: &str, res: &str, seq: i32, chain: char, xyz: [f64; 3]) -> String {
        format!(
            "ATOM  {serial:>5} {name:<4} {res:>3} {chain}{seq:>4}    {:>8.3}{:>8.3}{:>8.3}  1.00  0.00           {}",
            xyz[0],
            xyz[1],
            xyz[2],
            &name[..1]
        )
    }

    fn two_residues() -> String {
        let names = ["N", "CA", "C", "O"];
        let mut lines = Vec::new();
        let mut serial = 1;
        for r in 0..2 {
            for (a, name) in names.iter().enumerate() {
                let t = (r * 4 + a) as f64;
                lines.push(atom(serial, name, "GLY", r as i32 + 1, 'A', [t * 1.2, (t * 0.9).sin(), (t * 1.3).cos()]));
                serial += 1;
            }
        }
        lines.join("\n")
    }

    #[test]
    fn backbone_in_order() {
        let s = parse_pdb(&two_residues()).unwrap();
        let names: Vec<&str> = s.atoms.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["N", "CA", "C", "N", "CA", "C"]);
        assert_eq!(s.atoms[3].residue_seq, 2);
    }

    #[test]
    fn first_model_only() {
        let body = two_residues();
        let text = format!("MODEL        1\n{body}\nENDMDL\nMODEL        2\n{body}\nENDMDL\n");
        assert_eq!(parse_pdb(&text).unwrap().len(), 6);
    }

    #[test]
    fn first_chain_only_and_altloc() {
        let mut text = two_residues();
        text.push('\n');
        text.push_str(&atom(20, "CA", "ALA", 3, 'B', [9.0, 9.0, 9.0]));
        let mut alt = atom(21, "CA", "ALA", 3, 'A', [1.0, 2.0, 3.0]);
        alt.replace_range(16..17, "B");
        text.push('\n');
        text.push_str(&alt);
        assert_eq!(parse_pdb(&text).unwrap().len(), 6);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_pdb("HEADER x\n"), Err(GenioError::EmptyStructure)));
        let mut bad = atom(1, "N", "GLY", 1, 'A', [0.0, 0.0, 0.0]);
        bad.replace_range(30..38, "   abc  ");
        let text = format!("REMARK\n{bad}\n");
        assert!(matches!(parse_pdb(&text), Err(GenioError::Pdb { line: 2, .. })));
    }

    #[test]
    fn collinear_atoms_warn() {
        let lines: Vec<String> = (0..4)
            .map(|i| atom(i + 1, BACKBONE[i as usize % 3], "GLY", 1 + i as i32 / 3, 'A', [i as f64 * 1.5, 0.0, 0.0]))
            .collect();
        let s = parse_pdb(&lines.join("\n")).unwrap();
        let b = build_instance(&s, 10.0).unwrap();
        assert!(!b.warnings.is_empty());
    }

    #[test]
    fn zero_cutoff_has_no_pruning_edges() {
        let s = parse_pdb(&two_residues()).unwrap();
        let b = build_instance(&s, 0.0).unwrap();
        assert_eq!(b.instance.pruning_count(), 0);
        assert_eq!(b.instance.edge_count(), 3 * 6 - 6);
    }
}
