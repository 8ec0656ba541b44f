//! The line-oriented quiver file format:
//!
//! ```text
//! # comment
//! vertices: 2        # vertices are 0..count-1
//! arrow a 0 1
//! arrow b 0 1
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Arrow, Quiver, QuiverError};

impl Quiver {
    pub fn parse(text: &str) -> Result<Quiver, QuiverError> {
        let err = |line: usize, message: String| QuiverError::Parse { line, message };
        let mut vertex_count: Option<usize> = None;
        let mut arrows = Vec::new();
        let mut last = 0;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            last = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("vertices:") {
                if vertex_count.is_some() {
                    return Err(err(line, "duplicate `vertices:` declaration".into()));
                }
                let n = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| err(line, format!("invalid vertex count `{}`", rest.trim())))?;
                vertex_count = Some(n);
                continue;
            }
            let mut words = content.split_whitespace();
            match words.next() {
                Some("arrow") => {
                    let Some(n) = vertex_count else {
                        return Err(err(line, "`arrow` before `vertices:`".into()));
                    };
                    let fields: Vec<&str> = words.collect();
                    let [id, src, dst] = fields[..] else {
                        return Err(err(line, "expected `arrow <id> <src> <dst>`".into()));
                    };
                    let endpoint = |s: &str| -> Result<usize, QuiverError> {
                        let v = s.parse::<usize>().map_err(|_| err(line, format!("invalid vertex `{s}`")))?;
                        if v >= n {
                            return Err(err(line, format!("vertex {v} out of range (vertices: {n})")));
                        }
                        Ok(v)
                    };
                    arrows.push(Arrow::new(id, endpoint(src)?, endpoint(dst)?));
                    // surface duplicate ids with the offending line number
                    Quiver::new(n, arrows.clone()).map_err(|e| err(line, e.to_string()))?;
                }
                Some(other) => return Err(err(line, format!("unknown keyword `{other}`"))),
                None => unreachable!(),
            }
        }
        let n = vertex_count.ok_or_else(|| err(last.max(1), "missing `vertices:` declaration".into()))?;
        Quiver::new(n, arrows).map_err(|e| err(last, e.to_string()))
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("vertices: {}\n", self.vertex_count);
        for a in &self.arrows {
            writeln!(out, "arrow {} {} {}", a.id, a.source, a.target).unwrap();
        }
        out
    }
}

impl FromStr for Quiver {
    type Err = QuiverError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Quiver::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_quivers() {
        let j = Quiver::parse("vertices: 1\narrow a 0 0").unwrap();
        assert_eq!(j, Quiver::jordan());
        let k = Quiver::parse("# Kronecker\nvertices: 2   # two vertices\narrow a 0 1\narrow b 0 1\n").unwrap();
        assert_eq!(k, Quiver::kronecker());
    }

    #[test]
    fn reports_line_numbers() {
        let e = Quiver::parse("vertices: 2\narrow a 0 5").unwrap_err();
        assert!(matches!(e, QuiverError::Parse { line: 2, .. }), "{e}");
        let e = Quiver::parse("vertices: 1\n\nedge a 0 0").unwrap_err();
        assert!(matches!(e, QuiverError::Parse { line: 3, .. }));
        let e = Quiver::parse("arrow a 0 0\nvertices: 1").unwrap_err();
        assert!(matches!(e, QuiverError::Parse { line: 1, .. }));
        let e = Quiver::parse("vertices: 1\narrow a 0 0\narrow a 0 0").unwrap_err();
        assert!(matches!(e, QuiverError::Parse { line: 3, .. }));
        assert!(Quiver::parse("vertices: 1\narrow a 0").is_err());
        assert!(Quiver::parse("# nothing").is_err());
        assert!(Quiver::parse("vertices: x").is_err());
    }

    #[test]
    fn serialization_round_trip() {
        let q = Quiver::parse("vertices: 3\narrow z 2 0\narrow a 0 1\narrow l 1 1\n").unwrap();
        let text = q.serialize();
        assert_eq!(text, "vertices: 3\narrow z 2 0\narrow a 0 1\narrow l 1 1\n");
        assert_eq!(Quiver::parse(&text).unwrap(), q);
    }
}
