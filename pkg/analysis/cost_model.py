"""
Expected-runtime bound for a decider that only hunts for refutations.

Given priors over yes/no queries, per-unit-time losses for each, and
worst-case runtimes, the bound weighs each runtime by its relative loss.
Condition (*) holds when a no-instance costs at least as much as a
yes-instance once the priors are factored in.
"""

from models.schemas import CostModel, DSepQuery, RefutationModule


def expected_runtime_bound(m: CostModel) -> float:
    total_loss = m.loss_yes + m.loss_no
    return (
        (m.loss_yes / total_loss) * m.t_yes * m.pi_yes
        + (m.loss_no / total_loss) * m.t_no * m.pi_no
    )


def condition_star(m: CostModel) -> bool:
    return m.loss_no * m.pi_no >= m.loss_yes * m.pi_yes


def verification_cost(module: RefutationModule, q: DSepQuery) -> int:
    """Steps to check a certificate: membership, subgraph and reachability.

    |E_M| + |A| + |B| + |Z*|·|C| with Z* the C nodes inside the module.
    """
    nodes = {v for edge in module.edges for v in edge}
    z_star = q.c_set & nodes
    return module.size + len(q.a_set) + len(q.b_set) + len(z_star) * len(q.c_set)
