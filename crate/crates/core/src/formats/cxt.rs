use super::FormatError;
use crate::fca::FormalContext;

/// Parses a Burmeister context. The name line after `B` is ignored, CRLF
/// line endings are accepted and trailing blank lines are allowed.
pub fn read_cxt(text: &str) -> Result<FormalContext, FormatError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let end = body.split('\n').count() + 1;
    let mut lines = body
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l));
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| FormatError::CxtHeader {
            line: end,
            message: format!("document ends before {what}"),
        })
    };

    let (line, magic) = next("the `B` marker")?;
    if magic != "B" {
        return Err(FormatError::CxtHeader {
            line,
            message: format!("expected `B`, found `{magic}`"),
        });
    }
    next("the context name line")?;
    let count = |(line, text): (usize, &str), what: &str| {
        text.trim()
            .parse::<usize>()
            .map_err(|_| FormatError::CxtHeader {
                line,
                message: format!("expected {what} count, found `{text}`"),
            })
    };
    let n_objects = count(next("the object count")?, "object")?;
    let n_attributes = count(next("the attribute count")?, "attribute")?;
    let (line, blank) = next("the blank separator line")?;
    if !blank.trim().is_empty() {
        return Err(FormatError::CxtHeader {
            line,
            message: format!("expected a blank line, found `{blank}`"),
        });
    }

    let mut objects = Vec::with_capacity(n_objects);
    for _ in 0..n_objects {
        objects.push(next("all object names are listed")?.1.to_string());
    }
    let mut attributes = Vec::with_capacity(n_attributes);
    for _ in 0..n_attributes {
        attributes.push(next("all attribute names are listed")?.1.to_string());
    }

    let mut incidence = Vec::with_capacity(n_objects);
    for object in &objects {
        let (_, row) = next("all incidence rows are listed")?;
        let found = row.chars().count();
        if found != n_attributes {
            return Err(FormatError::CxtRowArity {
                object: object.clone(),
                expected: n_attributes,
                found,
            });
        }
        let bits = row
            .chars()
            .map(|c| match c {
                'X' => Ok(true),
                '.' => Ok(false),
                other => Err(FormatError::CxtCharacter {
                    object: object.clone(),
                    found: other,
                }),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        incidence.push(bits);
    }
    for (line, rest) in lines {
        if !rest.trim().is_empty() {
            return Err(FormatError::CxtTrailing { line });
        }
    }

    Ok(FormalContext::new(objects, attributes, incidence)?)
}

/// Canonical Burmeister text with an empty name line and LF endings.
pub fn write_cxt(ctx: &FormalContext) -> String {
    let mut out = format!("B\n\n{}\n{}\n\n", ctx.object_count(), ctx.attribute_count());
    for name in ctx.objects().iter().chain(ctx.attributes()) {
        out.push_str(name);
        out.push('\n');
    }
    for o in 0..ctx.object_count() {
        for a in 0..ctx.attribute_count() {
            out.push(if ctx.has(o, a) { 'X' } else { '.' });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fca::testing::table2;

    #[test]
    fn table2_round_trip() {
        let ctx = table2();
        let text = write_cxt(&ctx);
        assert!(text.starts_with("B\n\n8\n6\n\nSSF1\n"));
        assert!(text.contains("\n...XXX\n"));
        assert_eq!(read_cxt(&text).unwrap(), ctx);
    }

    #[test]
    fn empty_context() {
        let ctx = FormalContext::new(vec![], vec![], vec![]).unwrap();
        let text = write_cxt(&ctx);
        assert_eq!(text, "B\n\n0\n0\n\n");
        assert_eq!(read_cxt(&text).unwrap(), ctx);
    }

    #[test]
    fn objects_without_attributes() {
        let ctx = FormalContext::new(vec!["o".into()], vec![], vec![vec![]]).unwrap();
        let text = write_cxt(&ctx);
        assert_eq!(text, "B\n\n1\n0\n\no\n\n");
        assert_eq!(read_cxt(&text).unwrap(), ctx);
    }

    #[test]
    fn tolerant_reading() {
        let ctx = read_cxt("B\r\nname\r\n1\r\n2\r\n\r\no\r\na\r\nb\r\nX.\r\n\r\n").unwrap();
        assert!(ctx.has(0, 0));
        assert!(!ctx.has(0, 1));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            read_cxt("A\n\n0\n0\n\n"),
            Err(FormatError::CxtHeader { line: 1, .. })
        ));
        assert!(matches!(
            read_cxt("B\n\nx\n0\n\n"),
            Err(FormatError::CxtHeader { line: 3, .. })
        ));
        assert!(matches!(
            read_cxt("B\n\n1\n1\n\no\na\n"),
            Err(FormatError::CxtHeader { .. })
        ));
        assert_eq!(
            read_cxt("B\n\n2\n2\n\no1\no2\na\nb\nX.\nX\n").unwrap_err(),
            FormatError::CxtRowArity {
                object: "o2".into(),
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            read_cxt("B\n\n1\n1\n\no\na\nx\n").unwrap_err(),
            FormatError::CxtCharacter {
                object: "o".into(),
                found: 'x'
            }
        );
        assert!(matches!(
            read_cxt("B\n\n1\n1\n\no\na\nX\nX\n"),
            Err(FormatError::CxtTrailing { line: 9 })
        ));
        assert!(matches!(
            read_cxt("B\n\n2\n1\n\no\no\na\nX\nX\n"),
            Err(FormatError::Context(_))
        ));
    }
}
