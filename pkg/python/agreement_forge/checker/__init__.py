from .buchi import BuchiAutomaton, BuchiTransition, ltl_to_buchi
from .deadlock import DeadlockCex, check_deadlock
from .lasso import Lasso, ProductStructure, find_fair_accepting_lasso
from .safety import ErrorTrace, check_safety, global_env, violated_lines
