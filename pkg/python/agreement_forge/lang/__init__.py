from .ast import Action, EventKind, Handler, HandlerKind, HolePosition, HoleSignature, ProcessSketch
from .domain import Domain, Value, format_value
from .parser import load_sketch, load_spec, parse_sketch
from .printer import dump_ast, instantiate, pretty_print, substitute
from .spec import LivenessLine, LivenessTemplate, SafetyLine, SpecSuite, parse_spec
from .validate import Diagnostic, Severity, validate
