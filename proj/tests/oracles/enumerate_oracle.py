"""Brute-force posterior oracle used to freeze expected values in the C++ tests.

Independent of the C++ code: the T1 network is rebuilt here from the edge rules,
and marginals come from explicit summation over every fault assignment.
"""
import itertools
import numpy as np


def noisy_or(active_probs, leak):
    q = 1.0 - leak
    for p in active_probs:
        q *= 1.0 - p
    return 1.0 - q


def enumerate_marginals(priors, cpts, evidence):
    faults = sorted(priors)
    idx = {f: i for i, f in enumerate(faults)}
    n = len(faults)
    states = np.array(list(itertools.product([0, 1], repeat=n)), dtype=np.int8)
    w = np.ones(len(states))
    for f, i in idx.items():
        w *= np.where(states[:, i] == 1, priors[f], 1.0 - priors[f])
    for child, (parents, probs, leak) in cpts.items():
        if child not in evidence:
            continue
        q = np.full(len(states), 1.0 - leak)
        for p, pr in zip(parents, probs):
            q *= np.where(states[:, idx[p]] == 1, 1.0 - pr, 1.0)
        w *= (1.0 - q) if evidence[child] else q
    z = w.sum()
    return {f: float((w * states[:, idx[f]]).sum() / z) for f in faults}


def bn2(leak=0.001):
    priors = {"A": 0.01, "B": 0.01}
    cpts = {"Y": (["A", "B"], [0.9, 0.9], leak)}
    return priors, cpts


def t1():
    d, ind = 0.95, 0.8
    priors = {}
    for c in ["c0", "s1", "s2", "s3", "l1", "l2", "l3", "la", "lb"]:
        priors[f"F_phys({c})"] = 0.01
    for s in ["s1", "s2", "s3"]:
        priors[f"F_agent({s})"] = 0.02
    for l in ["l1", "l2", "l3", "la", "lb"]:
        priors[f"F_drop({l})"] = 0.01
    priors["F_ctrl(c0)"] = 0.005
    priors["F_svc(v1)"] = 0.02
    links = {"l1": ("s1", "s2"), "l2": ("s1", "s3"), "l3": ("s3", "s2"),
             "la": ("h1", "s1"), "lb": ("h2", "s2")}
    cpts = {}
    leak = 0.001

    def add(child, edges):
        cpts[child] = ([e[0] for e in edges], [e[1] for e in edges], leak)

    for l, ends in links.items():
        e = [(f"F_phys({l})", d)] + [(f"F_phys({n})", d) for n in ends if n[0] != "h"]
        add(f"Y_link-down({l})", e)
        e = [(f"F_phys({l})", d), (f"F_drop({l})", d)] + \
            [(f"F_phys({n})", ind) for n in ends if n[0] != "h"]
        add(f"Y_traffic-drop({l})", e)
    for n in ["c0", "s1", "s2", "s3"]:
        add(f"Y_node-unreachable({n})", [(f"F_phys({n})", d)])
    for s in ["s1", "s2", "s3"]:
        add(f"Y_of-session-lost({s})",
            [(f"F_agent({s})", d), (f"F_ctrl(c0)", d), (f"F_phys({s})", ind)])
    path = ["h1", "la", "s1", "l1", "s2", "lb", "h2"]
    phys = [c for c in path if c[0] != "h"]
    sd = [("F_svc(v1)", d)] + [(f"F_phys({c})", d) for c in phys] + \
         [(f"F_agent({s})", ind) for s in ["s1", "s2"]]
    add("Y_service-down(v1)", sd)
    sla = [("F_svc(v1)", ind)] + [(f"F_phys({c})", ind) for c in phys] + \
          [(f"F_agent({s})", ind) for s in ["s1", "s2"]] + \
          [(f"F_drop({l})", d) for l in ["la", "l1", "lb"]]
    add("Y_sla-violation(v1)", sla)
    return priors, cpts


def closed_world(cpts, true_symptoms):
    return {y: (y in true_symptoms) for y in cpts}


if __name__ == "__main__":
    p, c = bn2()
    py = enumerate_marginals(p, c, {"Y": True})
    print("BN2 P(A|Y) =", repr(py["A"]))
    p, c = bn2(leak=0.0)
    c["Z"] = (["A"], [1.0], 0.0)
    y_only = enumerate_marginals(p, c, {"Y": True})
    both = enumerate_marginals(p, c, {"Y": True, "Z": True})
    print("BN2(leak0) P(B|Y) =", repr(y_only["B"]), " P(B|Y,Z) =", repr(both["B"]),
          " P(A|Y,Z) =", repr(both["A"]))
    p, c = bn2()
    c["Z"] = (["A"], [1.0], 0.0)
    y_only = enumerate_marginals(p, c, {"Y": True})
    both = enumerate_marginals(p, c, {"Y": True, "Z": True})
    print("BN2+Z(leak .001) P(B|Y) =", repr(y_only["B"]), " P(B|Y,Z) =", repr(both["B"]))

    priors, cpts = t1()
    print("T1:", len(priors), "faults,", len(cpts), "symptoms")
    cases = {
        "physical-failure(l1)": ["Y_link-down(l1)", "Y_traffic-drop(l1)", "Y_service-down(v1)"],
        "physical-failure(s1)": ["Y_node-unreachable(s1)", "Y_link-down(la)", "Y_link-down(l1)",
                                 "Y_link-down(l2)", "Y_service-down(v1)"],
        "physical-failure(s3)": ["Y_node-unreachable(s3)", "Y_link-down(l2)", "Y_link-down(l3)"],
        "physical-failure(c0)": ["Y_node-unreachable(c0)"],
        "physical-failure(la)": ["Y_link-down(la)", "Y_traffic-drop(la)", "Y_service-down(v1)"],
        "openflow-agent-crash(s1)": ["Y_of-session-lost(s1)"],
        "openflow-agent-crash(s3)": ["Y_of-session-lost(s3)"],
        "interface-traffic-drop(l1)": ["Y_traffic-drop(l1)", "Y_sla-violation(v1)"],
        "interface-traffic-drop(l2)": ["Y_traffic-drop(l2)"],
        "service-fault(v1)": ["Y_service-down(v1)"],
        "controller-crash(c0)": ["Y_of-session-lost(s1)", "Y_of-session-lost(s2)",
                                 "Y_of-session-lost(s3)"],
    }
    for name, ys in cases.items():
        m = enumerate_marginals(priors, cpts, closed_world(cpts, set(ys)))
        top = sorted(m.items(), key=lambda kv: (-kv[1], kv[0]))[:3]
        print(f"{name:30s}", ", ".join(f"{k}={v!r}" for k, v in top))
