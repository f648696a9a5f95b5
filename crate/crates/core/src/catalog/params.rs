use std::collections::BTreeMap;

use evalexpr::{eval_boolean_with_context, eval_int_with_context, ContextWithMutableVariables, HashMapContext, Value};

use crate::error::{CkfError, Result};

/// Integer parameters of a catalog entry, by name.
pub type Params = BTreeMap<String, i64>;

fn context(params: &Params) -> Result<HashMapContext> {
    let mut ctx = HashMapContext::new();
    for (k, v) in params {
        ctx.set_value(k.clone(), Value::Int(*v))
            .map_err(|e| CkfError::ParameterViolation(format!("{k}: {e}")))?;
    }
    Ok(ctx)
}

/// A boolean predicate over the entry parameters, e.g. `"q % 2 == 1"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamConstraint {
    pub expr: String,
}

impl ParamConstraint {
    pub fn new(expr: impl Into<String>) -> Self {
        Self { expr: expr.into() }
    }

    pub fn holds(&self, params: &Params) -> Result<bool> {
        eval_boolean_with_context(&self.expr, &context(params)?)
            .map_err(|e| CkfError::ParameterViolation(format!("`{}`: {e}", self.expr)))
    }
}

pub fn format_params(params: &Params) -> String {
    let s: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    s.join(",")
}

/// First constraint that fails at `params`, as an error.
pub fn check_constraints(constraints: &[ParamConstraint], params: &Params) -> Result<()> {
    for c in constraints {
        if !c.holds(params)? {
            return Err(CkfError::ParameterViolation(format!(
                "({}) violates `{}`",
                format_params(params),
                c.expr
            )));
        }
    }
    Ok(())
}

/// Replaces every `{expr}` in `template` by its integer value.
pub fn expand(template: &str, params: &Params) -> Result<String> {
    let ctx = context(params)?;
    let mut out = String::new();
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..]
            .find('}')
            .ok_or_else(|| CkfError::ParameterViolation(format!("unclosed `{{` in `{template}`")))?;
        let expr = &rest[open + 1..open + close];
        let v = eval_int_with_context(expr, &ctx)
            .map_err(|e| CkfError::ParameterViolation(format!("`{expr}` in `{template}`: {e}")))?;
        out.push_str(&v.to_string());
        rest = &rest[open + close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

/// Every assignment of `0..=bound` to `names` satisfying `constraints`,
/// ordered by parameter sum and then lexicographically.
pub fn admissible_tuples(names: &[String], constraints: &[ParamConstraint], bound: i64) -> Result<Vec<Params>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; names.len()];
    loop {
        let params: Params = names.iter().cloned().zip(cur.iter().copied()).collect();
        let mut ok = true;
        for c in constraints {
            if !c.holds(&params)? {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(params);
        }
        let Some(i) = (0..cur.len()).rev().find(|&i| cur[i] < bound) else { break };
        cur[i] += 1;
        cur[i + 1..].iter_mut().for_each(|x| *x = 0);
    }
    out.sort_by_key(|p| (p.values().sum::<i64>(), p.values().copied().collect::<Vec<_>>()));
    Ok(out)
}
