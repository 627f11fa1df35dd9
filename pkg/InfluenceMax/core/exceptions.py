"""
Custom exception classes for the influence maximization library.
"""

from typing import Optional, Dict, Any


class InfluenceMaxBaseException(Exception):
    """Base exception for all library errors."""

    def __init__(
        self,
        message: str,
        exit_code: int = 1,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for CLI error output."""
        return {
            "error": self.__class__.__name__,
            "message": self.message,
            "details": self.details
        }


# ============================================================================
# Input Errors (exit 2)
# ============================================================================

class EdgeListParseError(InfluenceMaxBaseException):
    """Raised when an edge-list line cannot be parsed."""

    def __init__(self, line_number: int, reason: str):
        super().__init__(
            message=f"Malformed edge list at line {line_number}: {reason}",
            exit_code=2,
            details={"line_number": line_number, "reason": reason}
        )


class ProbabilityError(InfluenceMaxBaseException):
    """Raised when a propagation probability is out of range."""

    def __init__(self, value: float, line_number: Optional[int] = None):
        details: Dict[str, Any] = {"value": value}
        where = ""
        if line_number is not None:
            details["line_number"] = line_number
            where = f" at line {line_number}"
        super().__init__(
            message=f"Propagation probability {value} out of range{where}",
            exit_code=2,
            details=details
        )


class NodeIdError(InfluenceMaxBaseException):
    """Raised when a node id or label does not exist in the network."""

    def __init__(self, node: Any, node_count: int):
        super().__init__(
            message=f"Unknown node: {node}",
            exit_code=2,
            details={"node": str(node), "node_count": node_count}
        )


class SeedSetError(InfluenceMaxBaseException):
    """Raised when a seed set is not a set of distinct valid ids."""

    def __init__(self, reason: str):
        super().__init__(
            message=f"Invalid seed set: {reason}",
            exit_code=2,
            details={"reason": reason}
        )


class PreferenceWeightsError(InfluenceMaxBaseException):
    """Raised when preference weights do not sum to one or leave (0, 1]."""

    def __init__(self, weights: Any):
        super().__init__(
            message="Preference weights must lie in (0, 1] and sum to 1",
            exit_code=2,
            details={"weights": list(weights)}
        )


class UnknownMethodError(InfluenceMaxBaseException):
    """Raised when a method or transformation name is not registered."""

    def __init__(self, name: str, known: Any):
        super().__init__(
            message=f"Unknown method: {name}",
            exit_code=2,
            details={"name": name, "known": sorted(known)}
        )


class SuiteConfigError(InfluenceMaxBaseException):
    """Raised when an experiment suite file is invalid."""

    def __init__(self, reason: str, original_error: Optional[Exception] = None):
        details = {"reason": reason}
        if original_error:
            details["original_error"] = str(original_error)
            details["error_type"] = type(original_error).__name__

        super().__init__(
            message=f"Invalid suite configuration: {reason}",
            exit_code=2,
            details=details
        )


class ConfigurationError(InfluenceMaxBaseException):
    """Raised when run parameters violate their constraints."""

    def __init__(self, reason: str, original_error: Optional[Exception] = None):
        details = {"reason": reason}
        if original_error:
            details["original_error"] = str(original_error)
            details["error_type"] = type(original_error).__name__

        super().__init__(
            message=f"Invalid configuration: {reason}",
            exit_code=2,
            details=details
        )


# ============================================================================
# Construction Errors (exit 3)
# ============================================================================

class GraphConstructionError(InfluenceMaxBaseException):
    """Raised when a generator cannot realise the requested structure."""

    def __init__(self, reason: str):
        super().__init__(
            message=f"Cannot construct network: {reason}",
            exit_code=3,
            details={"reason": reason}
        )


class GraphTooLargeError(InfluenceMaxBaseException):
    """Raised when the exact oracle is asked to enumerate too many edges."""

    def __init__(self, edge_count: int, limit: int):
        super().__init__(
            message=f"Exact enumeration needs at most {limit} edges, got {edge_count}",
            exit_code=3,
            details={"edge_count": edge_count, "limit": limit}
        )


class UnreparableGenomeError(InfluenceMaxBaseException):
    """Raised when a genome needs more distinct nodes than the network has."""

    def __init__(self, k: int, node_count: int):
        super().__init__(
            message=f"Seed set size {k} exceeds node count {node_count}",
            exit_code=3,
            details={"k": k, "node_count": node_count}
        )


class PopulationMismatchError(InfluenceMaxBaseException):
    """Raised when populations disagree on size or genome length."""

    def __init__(self, reason: str):
        super().__init__(
            message=f"Population mismatch: {reason}",
            exit_code=3,
            details={"reason": reason}
        )


class MissingFitnessError(InfluenceMaxBaseException):
    """Raised when selection meets a candidate without a fitness value."""

    def __init__(self, index: int):
        super().__init__(
            message=f"Fitness missing for candidate {index}",
            exit_code=3,
            details={"candidate": index}
        )


# ============================================================================
# Output Errors (exit 4)
# ============================================================================

class OutputWriteError(InfluenceMaxBaseException):
    """Raised when a result file cannot be written."""

    def __init__(self, path: str, original_error: Optional[Exception] = None):
        details = {"path": path}
        if original_error:
            details["original_error"] = str(original_error)
            details["error_type"] = type(original_error).__name__

        super().__init__(
            message=f"Failed to write output: {path}",
            exit_code=4,
            details=details
        )
