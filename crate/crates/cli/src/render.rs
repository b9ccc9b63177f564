//! Payload documents for each table kind, and their CSV renderings.
//! Every document is a `serde_json::Value` so the cache can store it verbatim.

use hyperoct::burnside::{class_sizes, class_sizes_by_cycle_type, count_type_sn};
use hyperoct::linalg::format_rational;
use hyperoct::{DoublePartition, Hyperoctahedral, MarkTable, MrAlgebra, RatMatrix};
use serde_json::{json, Value};

use crate::cache::SCHEMA_VERSION;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Marks,
    Idempotents,
    Classes,
    TypeSn,
    Mr,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Marks => "marks",
            Kind::Idempotents => "idempotents",
            Kind::Classes => "classes",
            Kind::TypeSn => "typesn",
            Kind::Mr => "mr",
        }
    }
}

fn labels(table: &MarkTable) -> Vec<String> {
    table.order.classes().iter().map(|l| l.to_string()).collect()
}

fn rational_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect()
}

fn partition_json(l: &DoublePartition) -> Value {
    json!({ "label": l.to_string(), "plus": l.plus, "minus": l.minus })
}

pub fn compute(kind: Kind, h: &Hyperoctahedral) -> Result<Value, CliError> {
    let n = h.rank();
    if kind == Kind::Mr {
        let mr = MrAlgebra::new(h)?;
        let structure: Vec<Value> = mr
            .sparse_structure()?
            .iter()
            .map(|(&(i, j, k), c)| json!([i, j, k, format_rational(c)]))
            .collect();
        let basis: Vec<String> = mr.basis().iter().map(|a| a.to_string()).collect();
        return Ok(json!({
            "schema_version": SCHEMA_VERSION,
            "n": n,
            "basis": basis,
            "structure": structure,
        }));
    }
    let table = MarkTable::build(h)?;
    let order = labels(&table);
    Ok(match kind {
        Kind::Marks => json!({
            "schema_version": SCHEMA_VERSION,
            "n": n,
            "order": order,
            "phi": table.phi,
            "marks": table.marks,
            "u": rational_rows(&table.u),
        }),
        // e_λ = Σ_μ u_λμ φ_μ, so the coordinates are the rows of u.
        Kind::Idempotents => json!({
            "schema_version": SCHEMA_VERSION,
            "n": n,
            "order": order,
            "idempotents": rational_rows(&table.u),
        }),
        Kind::Classes => {
            let sizes = class_sizes(&table)?;
            let scanned = class_sizes_by_cycle_type(h);
            let sizes: Vec<u64> = sizes.iter().map(|s| u64::try_from(s).unwrap_or(u64::MAX)).collect();
            if sizes != scanned {
                return Err(CliError::Invariant(format!(
                    "class sizes {sizes:?} differ from cycle-type counts {scanned:?}"
                )));
            }
            json!({
                "schema_version": SCHEMA_VERSION,
                "n": n,
                "order": order,
                "sizes": sizes,
            })
        }
        Kind::TypeSn => {
            let (count, breakdown) = count_type_sn(&table)?;
            let breakdown: Vec<Value> = breakdown
                .iter()
                .map(|(l, size)| json!({ "class": partition_json(l), "size": size.to_string() }))
                .collect();
            json!({
                "schema_version": SCHEMA_VERSION,
                "n": n,
                "count": count.to_string(),
                "breakdown": breakdown,
            })
        }
        Kind::Mr => unreachable!(),
    })
}

pub fn to_json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("values always serialize");
    s.push('\n');
    s
}

fn write_rows(rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Strings unquoted, everything else in its JSON form.
fn scalar(v: &Value) -> String {
    v.as_str().map_or_else(|| v.to_string(), str::to_string)
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().map(|a| a.iter().map(scalar).collect()).unwrap_or_default()
}

/// A square table with the class labels as header and first column.
fn labelled_matrix(order: &[String], corner: &str, rows: &Value) -> Result<String, CliError> {
    let header = std::iter::once(corner.to_string()).chain(order.iter().cloned()).collect();
    let body = order.iter().zip(rows.as_array().into_iter().flatten()).map(|(label, row)| {
        std::iter::once(label.clone()).chain(strings(row)).collect()
    });
    write_rows(std::iter::once(header).chain(body))
}

/// `table` picks one matrix of a marks document; CSV holds one table per file.
pub fn to_csv(kind: Kind, doc: &Value, table: &str) -> Result<String, CliError> {
    let order = strings(&doc["order"]);
    match kind {
        Kind::Marks => {
            if !["phi", "marks", "u"].contains(&table) {
                return Err(CliError::Usage(format!("unknown table {table}; expected phi, marks or u")));
            }
            labelled_matrix(&order, table, &doc[table])
        }
        Kind::Idempotents => labelled_matrix(&order, "e", &doc["idempotents"]),
        Kind::Classes => {
            let sizes = strings(&doc["sizes"]);
            let rows = order.iter().zip(sizes).map(|(l, s)| vec![l.clone(), s]);
            write_rows(std::iter::once(vec!["class".into(), "size".into()]).chain(rows))
        }
        Kind::TypeSn => {
            let rows = doc["breakdown"].as_array().into_iter().flatten().map(|b| {
                vec![scalar(&b["class"]["label"]), scalar(&b["size"])]
            });
            let total = vec!["total".to_string(), scalar(&doc["count"])];
            write_rows(std::iter::once(vec!["class".into(), "size".into()]).chain(rows).chain([total]))
        }
        Kind::Mr => {
            let basis = strings(&doc["basis"]);
            let rows = doc["structure"].as_array().into_iter().flatten().map(|t| {
                let idx = |k: usize| t[k].as_u64().unwrap_or_default() as usize;
                vec![
                    basis[idx(0)].clone(),
                    basis[idx(1)].clone(),
                    basis[idx(2)].clone(),
                    scalar(&t[3]),
                ]
            });
            write_rows(std::iter::once(vec!["a".into(), "b".into(), "c".into(), "coefficient".into()]).chain(rows))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marks_document_at_rank_two() {
        let h = Hyperoctahedral::new(2).unwrap();
        let doc = compute(Kind::Marks, &h).unwrap();
        assert_eq!(doc["phi"][0], json!([1, 1, 1, 1, 1]));
        assert_eq!(doc["u"][4][4], json!("1/8"));
        assert_eq!(doc["u"][0][0], json!("1/1"));
        let csv = to_csv(Kind::Marks, &doc, "phi").unwrap();
        assert_eq!(csv.lines().count(), 6);
    }

    #[test]
    fn csv_rejects_unknown_marks_table() {
        let h = Hyperoctahedral::new(1).unwrap();
        let doc = compute(Kind::Marks, &h).unwrap();
        assert!(matches!(to_csv(Kind::Marks, &doc, "psi"), Err(CliError::Usage(_))));
    }
}
