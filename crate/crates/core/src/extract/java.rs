//! Java front-end over the tree-sitter grammar.

use std::cell::RefCell;

use tree_sitter::{Node, Parser};

use super::{Declaration, IdentifierKind, LanguageFrontEnd, ParseError};

const MAX_EXPRESSION_CHARS: usize = 200;

const LITERAL_KINDS: &[&str] = &[
    "decimal_integer_literal",
    "hex_integer_literal",
    "octal_integer_literal",
    "binary_integer_literal",
    "decimal_floating_point_literal",
    "hex_floating_point_literal",
    "character_literal",
    "string_literal",
    "text_block",
    "true",
    "false",
    "null_literal",
];

thread_local! {
    static PARSER: RefCell<Option<Parser>> = const { RefCell::new(None) };
}

#[derive(Debug, Default, Clone, Copy)]
pub struct JavaFrontEnd;

impl LanguageFrontEnd for JavaFrontEnd {
    fn extensions(&self) -> &[&str] {
        &["java"]
    }

    fn declarations(&self, source: &str) -> Result<Vec<Declaration>, ParseError> {
        let tree = PARSER.with(|cell| {
            let mut slot = cell.borrow_mut();
            let parser = match slot.as_mut() {
                Some(p) => p,
                None => {
                    let mut p = Parser::new();
                    p.set_language(&tree_sitter_java::LANGUAGE.into())
                        .map_err(|e| ParseError(format!("cannot load Java grammar: {e}")))?;
                    slot.insert(p)
                }
            };
            parser
                .parse(source, None)
                .ok_or_else(|| ParseError("parser produced no tree".into()))
        })?;

        let root = tree.root_node();
        if root.has_error() {
            let at = first_error(root)
                .map(|n| format!(" at line {}", n.start_position().row + 1))
                .unwrap_or_default();
            return Err(ParseError(format!("syntax error{at}")));
        }

        let mut walker = Walker::new(source);
        walker.walk(root);
        Ok(walker.out)
    }
}

fn first_error(node: Node) -> Option<Node> {
    if node.is_error() || node.is_missing() {
        return Some(node);
    }
    let mut cursor = node.walk();
    let children: Vec<Node> = node.children(&mut cursor).collect();
    children
        .into_iter()
        .filter(|c| c.has_error())
        .find_map(first_error)
}

#[derive(Debug, Clone, Default)]
struct Scope {
    class: Option<String>,
    method: Option<String>,
}

struct Walker<'a> {
    source: &'a str,
    line_starts: Vec<usize>,
    out: Vec<Declaration>,
}

impl<'a> Walker<'a> {
    fn new(source: &'a str) -> Self {
        let mut line_starts = vec![0];
        line_starts.extend(source.match_indices('\n').map(|(i, _)| i + 1));
        Self {
            source,
            line_starts,
            out: Vec::new(),
        }
    }

    fn text(&self, node: Node) -> &'a str {
        &self.source[node.byte_range()]
    }

    fn walk(&mut self, root: Node<'a>) {
        let mut stack = vec![(root, Scope::default())];
        while let Some((node, scope)) = stack.pop() {
            self.visit(node, scope, &mut stack);
        }
    }

    fn visit(&mut self, node: Node<'a>, scope: Scope, stack: &mut Vec<(Node<'a>, Scope)>) {
        match node.kind() {
            "class_declaration"
            | "interface_declaration"
            | "record_declaration"
            | "annotation_type_declaration"
            | "enum_declaration" => {
                let kind = if node.kind() == "enum_declaration" {
                    IdentifierKind::Enum
                } else {
                    IdentifierKind::Class
                };
                let Some(name) = node.child_by_field_name("name") else {
                    return;
                };
                let class_name = self.text(name).to_string();
                self.emit(name, kind, None, &scope, None);
                let inner = Scope {
                    class: Some(class_name.clone()),
                    method: None,
                };
                if let Some(params) = node.child_by_field_name("parameters") {
                    // record components
                    for param in named_children(params) {
                        self.parameter(param, IdentifierKind::Field, &inner);
                    }
                }
                if let Some(body) = node.child_by_field_name("body") {
                    stack.push((body, inner));
                }
            }
            "enum_constant" => {
                let Some(name) = node.child_by_field_name("name") else {
                    return;
                };
                self.emit(name, IdentifierKind::EnumConstant, scope.class.clone(), &scope, None);
                self.push_children(node, scope, stack);
            }
            "method_declaration" | "annotation_type_element_declaration" => {
                let Some(name) = node.child_by_field_name("name") else {
                    return;
                };
                let ty = self.declared_type(node);
                self.emit(name, IdentifierKind::Method, ty, &scope, None);
                let inner = Scope {
                    class: scope.class.clone(),
                    method: Some(self.text(name).to_string()),
                };
                self.callable(node, inner, stack);
            }
            "constructor_declaration" | "compact_constructor_declaration" => {
                let method = node
                    .child_by_field_name("name")
                    .map(|n| self.text(n).to_string());
                let inner = Scope {
                    class: scope.class.clone(),
                    method,
                };
                self.callable(node, inner, stack);
            }
            "static_initializer" => {
                let inner = Scope {
                    class: scope.class.clone(),
                    method: Some("<clinit>".into()),
                };
                self.push_children(node, inner, stack);
            }
            "block" if node.parent().is_some_and(|p| p.kind() == "class_body") => {
                let inner = Scope {
                    class: scope.class.clone(),
                    method: Some("<init>".into()),
                };
                self.push_children(node, inner, stack);
            }
            "field_declaration" | "constant_declaration" => {
                let is_static = has_modifier(node, self.source, "static");
                let value_scope = Scope {
                    class: scope.class.clone(),
                    method: Some(if is_static { "<clinit>" } else { "<init>" }.into()),
                };
                self.variables(node, IdentifierKind::Field, &scope, &value_scope, stack);
            }
            "local_variable_declaration" => {
                self.variables(node, IdentifierKind::LocalVariable, &scope, &scope, stack);
            }
            "enhanced_for_statement" | "resource" => {
                if let Some(name) = node.child_by_field_name("name") {
                    if name.kind() == "identifier" {
                        let ty = self.declared_type(node);
                        let value = node.child_by_field_name("value");
                        self.emit(name, IdentifierKind::LocalVariable, ty, &scope, value);
                    }
                }
                self.push_children(node, scope, stack);
            }
            "catch_formal_parameter" => {
                if let Some(name) = node.child_by_field_name("name") {
                    if name.kind() == "identifier" {
                        let ty = named_children(node)
                            .into_iter()
                            .find(|c| c.kind() == "catch_type")
                            .map(|c| collapse_ws(self.text(c)));
                        self.emit(name, IdentifierKind::Parameter, ty, &scope, None);
                    }
                }
            }
            "lambda_expression" => {
                let inner = Scope {
                    class: scope.class.clone(),
                    method: Some(scope.method.clone().unwrap_or_else(|| "<init>".into())),
                };
                if let Some(params) = node.child_by_field_name("parameters") {
                    match params.kind() {
                        "identifier" => {
                            self.emit(params, IdentifierKind::LocalVariable, None, &inner, None)
                        }
                        "inferred_parameters" => {
                            for id in named_children(params) {
                                if id.kind() == "identifier" {
                                    self.emit(id, IdentifierKind::LocalVariable, None, &inner, None);
                                }
                            }
                        }
                        _ => {
                            for param in named_children(params) {
                                self.parameter(param, IdentifierKind::LocalVariable, &inner);
                            }
                        }
                    }
                }
                if let Some(body) = node.child_by_field_name("body") {
                    stack.push((body, inner));
                }
            }
            "instanceof_expression" => {
                if let (Some(name), Some(ty)) = (
                    node.child_by_field_name("name"),
                    node.child_by_field_name("right"),
                ) {
                    let ty = collapse_ws(self.text(ty));
                    self.emit(name, IdentifierKind::LocalVariable, Some(ty), &scope, None);
                }
                self.push_children(node, scope, stack);
            }
            "type_pattern" | "record_pattern_component" => {
                let children = named_children(node);
                let name = children.iter().rev().find(|c| c.kind() == "identifier");
                let ty = children
                    .iter()
                    .find(|c| c.kind() != "identifier" && c.kind() != "modifiers");
                if let Some(&name) = name {
                    let ty = ty.map(|t| collapse_ws(self.text(*t)));
                    self.emit(name, IdentifierKind::LocalVariable, ty, &scope, None);
                }
                self.push_children(node, scope, stack);
            }
            "line_comment" | "block_comment" => {}
            _ => self.push_children(node, scope, stack),
        }
    }

    fn push_children(&self, node: Node<'a>, scope: Scope, stack: &mut Vec<(Node<'a>, Scope)>) {
        for child in named_children(node).into_iter().rev() {
            stack.push((child, scope.clone()));
        }
    }

    /// Methods, constructors: parameters become records, the rest is walked.
    fn callable(&mut self, node: Node<'a>, inner: Scope, stack: &mut Vec<(Node<'a>, Scope)>) {
        if let Some(params) = node.child_by_field_name("parameters") {
            for param in named_children(params) {
                self.parameter(param, IdentifierKind::Parameter, &inner);
            }
        }
        if let Some(body) = node.child_by_field_name("body") {
            stack.push((body, inner));
        }
    }

    fn parameter(&mut self, param: Node<'a>, kind: IdentifierKind, scope: &Scope) {
        match param.kind() {
            "formal_parameter" => {
                if let Some(name) = param.child_by_field_name("name") {
                    if name.kind() == "identifier" {
                        let ty = self.declared_type(param);
                        self.emit(name, kind, ty, scope, None);
                    }
                }
            }
            "spread_parameter" => {
                let children = named_children(param);
                let ty = children.iter().find(|c| {
                    !matches!(
                        c.kind(),
                        "modifiers" | "annotation" | "marker_annotation" | "variable_declarator"
                    )
                });
                let declarator = children.iter().find(|c| c.kind() == "variable_declarator");
                if let Some(name) = declarator.and_then(|d| d.child_by_field_name("name")) {
                    if name.kind() == "identifier" {
                        let ty = ty.map(|t| format!("{}...", collapse_ws(self.text(*t))));
                        self.emit(name, kind, ty, scope, None);
                    }
                }
            }
            _ => {}
        }
    }

    fn variables(
        &mut self,
        node: Node<'a>,
        kind: IdentifierKind,
        scope: &Scope,
        value_scope: &Scope,
        stack: &mut Vec<(Node<'a>, Scope)>,
    ) {
        let base_type = node
            .child_by_field_name("type")
            .map(|t| collapse_ws(self.text(t)));
        let mut cursor = node.walk();
        let declarators: Vec<Node> = node
            .children_by_field_name("declarator", &mut cursor)
            .collect();
        for decl in declarators {
            let Some(name) = decl.child_by_field_name("name") else {
                continue;
            };
            let value = decl.child_by_field_name("value");
            if name.kind() == "identifier" {
                let ty = base_type.as_ref().map(|t| {
                    let dims = decl
                        .child_by_field_name("dimensions")
                        .map(|d| collapse_ws(self.text(d)).replace(' ', ""))
                        .unwrap_or_default();
                    format!("{t}{dims}")
                });
                self.emit(name, kind, ty, scope, value);
            }
            if let Some(value) = value {
                stack.push((value, value_scope.clone()));
            }
        }
    }

    /// `type` field text plus any trailing `dimensions`.
    fn declared_type(&self, node: Node<'a>) -> Option<String> {
        let ty = collapse_ws(self.text(node.child_by_field_name("type")?));
        let dims = node
            .child_by_field_name("dimensions")
            .map(|d| self.text(d).split_whitespace().collect::<String>())
            .unwrap_or_default();
        Some(format!("{ty}{dims}"))
    }

    fn emit(
        &mut self,
        name: Node<'a>,
        kind: IdentifierKind,
        declared_type: Option<String>,
        scope: &Scope,
        value: Option<Node<'a>>,
    ) {
        let text = self.text(name);
        if text.is_empty() || text.chars().any(char::is_whitespace) {
            return;
        }
        let enclosing_method = if matches!(kind, IdentifierKind::Parameter | IdentifierKind::LocalVariable) {
            Some(scope.method.clone().unwrap_or_else(|| "<init>".into()))
        } else {
            scope.method.clone()
        };
        let initializer_literal = value
            .filter(|v| LITERAL_KINDS.contains(&v.kind()))
            .map(|v| self.text(v).to_string());
        let source_expression = value.map(|v| truncate(collapse_ws(self.text(v))));
        let (line, column) = self.position(name);
        self.out.push(Declaration {
            name: text.to_string(),
            kind,
            declared_type,
            enclosing_class: scope.class.clone(),
            enclosing_method,
            line,
            column,
            initializer_literal,
            source_expression,
        });
    }

    /// 1-based line and character column.
    fn position(&self, node: Node) -> (u32, u32) {
        let row = node.start_position().row;
        let line_start = self.line_starts.get(row).copied().unwrap_or(0);
        let column = self.source[line_start..node.start_byte()].chars().count() + 1;
        (row as u32 + 1, column as u32)
    }
}

fn named_children(node: Node) -> Vec<Node> {
    let mut cursor = node.walk();
    node.named_children(&mut cursor).collect()
}

fn has_modifier(node: Node, source: &str, modifier: &str) -> bool {
    named_children(node)
        .into_iter()
        .find(|c| c.kind() == "modifiers")
        .is_some_and(|m| {
            source[m.byte_range()]
                .split_whitespace()
                .any(|w| w == modifier)
        })
}

fn collapse_ws(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn truncate(mut text: String) -> String {
    if let Some((idx, _)) = text.char_indices().nth(MAX_EXPRESSION_CHARS) {
        text.truncate(idx);
    }
    text
}
