"""Exception hierarchy shared by every module of the package."""


class PhyloError(Exception):
    """Base class for all errors raised by phylocomp."""


class ValidationError(PhyloError):
    """The input digraph is not a rooted phylogenetic network."""

    def __init__(self, message, node=None, edge=None):
        super().__init__(message)
        self.node = node
        self.edge = edge


class CyclicGraph(ValidationError):
    pass


class NoRoot(ValidationError):
    pass


class MultipleRoots(ValidationError):
    pass


class DegreeViolation(ValidationError):
    pass


class DuplicateTaxon(ValidationError):
    pass


class UnlabeledLeaf(ValidationError):
    pass


class ParallelEdge(ValidationError):
    pass


class UnknownNode(PhyloError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ENewickSyntaxError(PhyloError):
    """Malformed extended Newick or edge-list text."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnknownHybridReference(ENewickSyntaxError):
    pass


class PreconditionError(PhyloError):
    """An operation was called outside its documented domain."""


class NotReticulate(PreconditionError):
    pass


class NotTreeComponent(PreconditionError):
    pass


class NotTreeNode(PreconditionError):
    pass


class HasRedundantNodes(PreconditionError):
    pass


class NotBinary(PreconditionError):
    pass


class NotQuasiRV(PreconditionError):
    pass


class ComponentNotExposed(PreconditionError):
    pass


class InvalidCluster(PreconditionError):
    pass


class BudgetExceeded(PhyloError):
    """The oracle would need more switchings than its configured cap."""


class GenerationFailed(PhyloError):
    pass
