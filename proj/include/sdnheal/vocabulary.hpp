#pragma once

// Closed enumerations shared by every module, with their document spellings.

#include <array>
#include <string>
#include <string_view>
#include <utility>

#include "sdnheal/error.hpp"

namespace sdnheal {

using ComponentId = std::string;

enum class NodeKind { controller, openflow_switch, legacy_router, access_point, host };
enum class ComponentState { up, degraded, down };
enum class ServiceKind { streaming, generic };

enum class FaultClass {
  physical_failure,
  service_fault,
  openflow_agent_crash,
  interface_traffic_drop,
  controller_crash,
};

enum class AlarmLevel { service, transport, physical };

enum class Symptom {
  link_down,
  node_unreachable,
  of_session_lost,
  traffic_drop,
  service_down,
  sla_violation,
};

enum class ActionKind {
  reroute,
  restart_service,
  restart_openflow_agent,
  controller_failover,
  load_balance_ap,
  open_repair_ticket,
};

namespace detail {

template <class E, std::size_t N>
using NameTable = std::array<std::pair<E, std::string_view>, N>;

template <class E, std::size_t N>
std::string_view name_of(const NameTable<E, N>& table, E value) {
  for (const auto& [e, name] : table)
    if (e == value) return name;
  throw InvalidArgument("enum value out of range");
}

template <class E, std::size_t N>
E parse_name(const NameTable<E, N>& table, std::string_view text, std::string_view what) {
  for (const auto& [e, name] : table)
    if (name == text) return e;
  throw ParseError("unknown " + std::string(what) + ": '" + std::string(text) + "'");
}

inline constexpr NameTable<NodeKind, 5> kNodeKinds{{
    {NodeKind::controller, "controller"},
    {NodeKind::openflow_switch, "openflow-switch"},
    {NodeKind::legacy_router, "legacy-router"},
    {NodeKind::access_point, "access-point"},
    {NodeKind::host, "host"},
}};

inline constexpr NameTable<ComponentState, 3> kStates{{
    {ComponentState::up, "up"},
    {ComponentState::degraded, "degraded"},
    {ComponentState::down, "down"},
}};

inline constexpr NameTable<ServiceKind, 2> kServiceKinds{{
    {ServiceKind::streaming, "streaming"},
    {ServiceKind::generic, "generic"},
}};

inline constexpr NameTable<FaultClass, 5> kFaultClasses{{
    {FaultClass::physical_failure, "physical-failure"},
    {FaultClass::service_fault, "service-fault"},
    {FaultClass::openflow_agent_crash, "openflow-agent-crash"},
    {FaultClass::interface_traffic_drop, "interface-traffic-drop"},
    {FaultClass::controller_crash, "controller-crash"},
}};

inline constexpr NameTable<AlarmLevel, 3> kLevels{{
    {AlarmLevel::service, "service"},
    {AlarmLevel::transport, "transport"},
    {AlarmLevel::physical, "physical"},
}};

inline constexpr NameTable<Symptom, 6> kSymptoms{{
    {Symptom::link_down, "link-down"},
    {Symptom::node_unreachable, "node-unreachable"},
    {Symptom::of_session_lost, "of-session-lost"},
    {Symptom::traffic_drop, "traffic-drop"},
    {Symptom::service_down, "service-down"},
    {Symptom::sla_violation, "sla-violation"},
}};

inline constexpr NameTable<ActionKind, 6> kActionKinds{{
    {ActionKind::reroute, "reroute"},
    {ActionKind::restart_service, "restart-service"},
    {ActionKind::restart_openflow_agent, "restart-openflow-agent"},
    {ActionKind::controller_failover, "controller-failover"},
    {ActionKind::load_balance_ap, "load-balance-ap"},
    {ActionKind::open_repair_ticket, "open-repair-ticket"},
}};

}  // namespace detail

inline std::string to_string(NodeKind v) { return std::string(detail::name_of(detail::kNodeKinds, v)); }
inline std::string to_string(ComponentState v) { return std::string(detail::name_of(detail::kStates, v)); }
inline std::string to_string(ServiceKind v) { return std::string(detail::name_of(detail::kServiceKinds, v)); }
inline std::string to_string(FaultClass v) { return std::string(detail::name_of(detail::kFaultClasses, v)); }
inline std::string to_string(AlarmLevel v) { return std::string(detail::name_of(detail::kLevels, v)); }
inline std::string to_string(Symptom v) { return std::string(detail::name_of(detail::kSymptoms, v)); }
inline std::string to_string(ActionKind v) { return std::string(detail::name_of(detail::kActionKinds, v)); }

inline NodeKind parse_node_kind(std::string_view s) { return detail::parse_name(detail::kNodeKinds, s, "node kind"); }
inline ComponentState parse_state(std::string_view s) { return detail::parse_name(detail::kStates, s, "state"); }
inline ServiceKind parse_service_kind(std::string_view s) {
  return detail::parse_name(detail::kServiceKinds, s, "service kind");
}
inline FaultClass parse_fault_class(std::string_view s) {
  return detail::parse_name(detail::kFaultClasses, s, "fault class");
}
inline AlarmLevel parse_level(std::string_view s) { return detail::parse_name(detail::kLevels, s, "alarm level"); }
inline Symptom parse_symptom(std::string_view s) { return detail::parse_name(detail::kSymptoms, s, "symptom"); }
inline ActionKind parse_action_kind(std::string_view s) {
  return detail::parse_name(detail::kActionKinds, s, "action kind");
}

inline constexpr std::array<FaultClass, 5> kAllFaultClasses{
    FaultClass::physical_failure,       FaultClass::service_fault,    FaultClass::openflow_agent_crash,
    FaultClass::interface_traffic_drop, FaultClass::controller_crash,
};

inline constexpr std::array<Symptom, 6> kAllSymptoms{
    Symptom::link_down,    Symptom::node_unreachable, Symptom::of_session_lost,
    Symptom::traffic_drop, Symptom::service_down,     Symptom::sla_violation,
};

}  // namespace sdnheal
