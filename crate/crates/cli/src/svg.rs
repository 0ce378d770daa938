//! Drawing of rank-2 systems of fans. Coordinates are integers so the output
//! is byte-stable.

use std::fmt::Write;

use conical::{BigInt, SystemOfFans};
use num_traits::Signed;

const SIZE: i64 = 400;
const RADIUS: i64 = 160;

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("scaled coordinate fits")
}

pub fn render(s: &SystemOfFans) -> String {
    assert_eq!(s.ambient_rank, 2, "only rank 2 systems are drawn");
    let c = SIZE / 2;
    let max = s.rays.iter().flat_map(|r| r.iter().map(|x| x.abs())).max().unwrap_or_default().max(BigInt::from(1));
    let point = |v: &[BigInt]| -> (i64, i64) {
        let x = &v[0] * RADIUS / &max;
        let y = &v[1] * RADIUS / &max;
        (c + to_i64(&x), c - to_i64(&y))
    };
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#).unwrap();
    writeln!(out, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
    writeln!(out, r##"<line x1="0" y1="{c}" x2="{SIZE}" y2="{c}" stroke="#ddd"/>"##).unwrap();
    writeln!(out, r##"<line x1="{c}" y1="0" x2="{c}" y2="{SIZE}" stroke="#ddd"/>"##).unwrap();
    const FILLS: [&str; 6] = ["#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948"];
    for (i, cone) in s.cones.iter().enumerate() {
        let fill = FILLS[i % FILLS.len()];
        let pts: Vec<(i64, i64)> = cone.rays.iter().map(|&r| point(&s.rays[r])).collect();
        match pts.len() {
            0 => writeln!(out, r#"<circle cx="{c}" cy="{c}" r="6" fill="{fill}" fill-opacity="0.5"/>"#).unwrap(),
            1 => writeln!(out, r#"<line x1="{c}" y1="{c}" x2="{}" y2="{}" stroke="{fill}" stroke-width="6" stroke-opacity="0.5"/>"#, pts[0].0, pts[0].1).unwrap(),
            _ => {
                let mut poly = format!("{c},{c}");
                for (x, y) in &pts {
                    write!(poly, " {x},{y}").unwrap();
                }
                writeln!(out, r#"<polygon points="{poly}" fill="{fill}" fill-opacity="0.3" stroke="none"/>"#).unwrap();
            }
        }
        let (sx, sy) = pts.iter().fold((0, 0), |(a, b), (x, y)| (a + x - c, b + y - c));
        let k = pts.len().max(1) as i64;
        writeln!(out, r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#, c + sx / k / 2, c + sy / k / 2, escape(&cone.label)).unwrap();
    }
    for (i, r) in s.rays.iter().enumerate() {
        let (x, y) = point(r);
        writeln!(out, r#"<line x1="{c}" y1="{c}" x2="{x}" y2="{y}" stroke="black" stroke-width="2"/>"#).unwrap();
        writeln!(out, r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="11" dx="4" dy="-4">{i}</text>"#).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Faces of every cone as ray-index sets, grouped by dimension.
pub fn face_lattice(s: &SystemOfFans) -> String {
    let mut out = String::new();
    for cone in &s.cones {
        writeln!(out, "{} (dim {}):", cone.label, cone.cone.dim()).unwrap();
        let k = cone.rays.len();
        for d in (0..=k).rev() {
            let faces: Vec<String> = (0u32..1 << k)
                .filter(|m| m.count_ones() as usize == d)
                .map(|m| {
                    let idx: Vec<String> = (0..k).filter(|&j| m >> j & 1 == 1).map(|j| cone.rays[j].to_string()).collect();
                    format!("{{{}}}", idx.join(","))
                })
                .collect();
            writeln!(out, "  {d}: {}", faces.join(" ")).unwrap();
        }
    }
    out
}
