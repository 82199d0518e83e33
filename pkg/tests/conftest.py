"""
Pytest configuration and fixtures for addrvm tests.
"""
import pytest

from addrvm.atm import AddressTable
from addrvm.combinators import install
from addrvm.config import Settings
from addrvm.session import Session
from addrvm.utils.logging import setup_logging


@pytest.fixture(autouse=True, scope="session")
def configure_logging():
    """Route library logs to stderr at WARNING for the whole run."""
    setup_logging(Settings(log_level="WARNING", log_format="text"))


@pytest.fixture
def table():
    """A fresh, empty address table."""
    return AddressTable()


@pytest.fixture
def lib(table):
    """The standard machines installed into the fresh table."""
    return install(table)


@pytest.fixture
def session():
    """A fresh session with only the builtins defined."""
    return Session()


@pytest.fixture
def validity_fixture():
    """The seven example programs over r = 4 registers with registers 1 and 2 set."""
    return {
        "P0": ("Load 0; App 0 1 2; Call 2", True),
        "P1": ("App 1 2 0; App 0 2 3; Call 3", True),
        "P2": ("Load 5; Load 0; Call 0", True),
        "P3": ("Load 5; App 1 2 5; Call 2", True),
        "P4": ("App 0 1 2; Call 2", False),
        "P5": ("Load 0; Call 3", False),
        "P6": ("App 1 2 3; Call 5", False),
    }


@pytest.fixture
def validity_session_text():
    """The seven example programs as a session file."""
    return """addrvm v1
// r = 4, registers 1 and 2 initialized
machine P0 { regs = [_, @x0, @x1, _]; prog = "Load 0; App 0 1 2; Call 2"; }
machine P1 { regs = [_, @x0, @x1, _]; prog = "App 1 2 0; App 0 2 3; Call 3"; }
machine P2 { regs = [_, @x0, @x1, _]; prog = "Load 5; Load 0; Call 0"; }
machine P3 { regs = [_, @x0, @x1, _]; prog = "Load 5; App 1 2 5; Call 2"; }
machine P4 { regs = [_, @x0, @x1, _]; prog = "App 0 1 2; Call 2"; }
machine P5 { regs = [_, @x0, @x1, _]; prog = "Load 0; Call 3"; }
machine P6 { regs = [_, @x0, @x1, _]; prog = "App 1 2 3; Call 5"; }
"""
