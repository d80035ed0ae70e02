/// @file bundled.hpp
/// LiDAR fault trees shipped with the tool, as PlantUML source.
#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace fta::bundled {

/// First draft: category packages, every connection an implicit OR.
inline constexpr std::string_view kLidarInitial = R"puml(@startuml LIDAR Sensor Failure FTA
skinparam packageStyle rectangle
skinparam linetype ortho

rectangle "LIDAR Sensor Failure" as TopEvent

package "Hardware" {
  rectangle "Emitter" as Emitter
  rectangle "Detector" as Detector
  rectangle "Scanner" as Scanner
}

package "Software" {
  rectangle "Processing" as Processing
}

package "Environmental" {
  rectangle "Interference" as Interference
  rectangle "Obstruction" as Obstruction
}

TopEvent -- Hardware
TopEvent -- Software
TopEvent -- Environmental

Hardware -- Emitter
Hardware -- Detector
Hardware -- Scanner

Software -- Processing

Environmental -- Interference
Environmental -- Obstruction

rectangle "A: Laser diode degradation" as A
rectangle "B: Power supply issues" as B
rectangle "C: Overheating" as C
Emitter -- A
Emitter -- B
Emitter -- C

rectangle "D: Photodiode damage" as D
rectangle "E: Amplifier malfunction" as E
rectangle "F: Electrical connection issues" as F
Detector -- D
Detector -- E
Detector -- F

rectangle "G: Motor breakdown" as G
rectangle "H: Mirror/prism damage" as H
rectangle "I: Bearing wear" as I
Scanner -- G
Scanner -- H
Scanner -- I

rectangle "J: Algorithm bugs" as J
rectangle "K: Insufficient processing power" as K
Processing -- J
Processing -- K

rectangle "L: Adverse weather" as L
rectangle "M: Direct sunlight glare" as M
rectangle "N: Reflective surfaces" as N
Interference -- L
Interference -- M
Interference -- N

rectangle "O: Debris accumulation" as O
rectangle "P: Impact damage" as P
rectangle "Q: Misalignment from vibration" as Q
Obstruction -- O
Obstruction -- P
Obstruction -- Q

note bottom of TopEvent
  All connections represent OR gates
  Any lower-level event can cause
  the higher-level failure
end note

@enduml
)puml";

/// Gated revision: one circle per gate, AND/OR labels on the gate edges.
inline constexpr std::string_view kLidarFinal = R"puml(@startuml LIDAR Sensor Failure FTA

skinparam rectangle {
    roundCorner 25
}

rectangle "LIDAR Sensor Failure" as TopEvent

circle MainOR
circle HardwareAND
circle SoftwareOR
circle EnvironmentalAND

rectangle "Hardware Failure" as HardwareFailure
rectangle "Software Failure" as SoftwareFailure
rectangle "Environmental Factors" as EnvironmentalFactors

TopEvent -down-> MainOR : OR

MainOR -down-> HardwareFailure
MainOR -down-> SoftwareFailure
MainOR -down-> EnvironmentalFactors

HardwareFailure -down-> HardwareAND : AND
HardwareAND -down-> (Laser emitter degradation)
HardwareAND -down-> (Power supply issues)

SoftwareFailure -down-> SoftwareOR : OR
SoftwareOR -down-> (Algorithm bugs)
SoftwareOR -down-> (Insufficient processing power)

EnvironmentalFactors -down-> EnvironmentalAND : AND
EnvironmentalAND -down-> (Adverse weather)
EnvironmentalAND -down-> (Direct sunlight glare)

note right of TopEvent
  Circles labeled 'OR' represent OR gates
  Circles labeled 'AND' represent AND gates
end note

@enduml
)puml";

/// Five failure categories with four causes each.
inline constexpr std::string_view kLidarPerformance = R"puml(@startuml LIDAR Sensor Failure or Degradation in Level 4 Autonomy

skinparam rectangle {
    roundCorner 25
}

rectangle "LIDAR Sensor Failure or Significant Degradation\nin Level 4 Autonomy" as TopEvent
rectangle "Hardware Failure" as HardwareFailure
rectangle "Software Failure" as SoftwareFailure
rectangle "Environmental Factors" as EnvironmentalFactors
rectangle "Integration Issues" as IntegrationIssues
rectangle "Performance Degradation" as PerformanceDegradation

TopEvent --> HardwareFailure
TopEvent --> SoftwareFailure
TopEvent --> EnvironmentalFactors
TopEvent --> IntegrationIssues
TopEvent --> PerformanceDegradation

HardwareFailure --> "Laser emitter degradation"
HardwareFailure --> "Detector malfunction"
HardwareFailure --> "Scanning mechanism failure"
HardwareFailure --> "Power supply issues"

SoftwareFailure --> "Algorithm bugs"
SoftwareFailure --> "Insufficient processing power"
SoftwareFailure --> "Object detection/classification errors"
SoftwareFailure --> "Prediction algorithm failure"

EnvironmentalFactors --> "Adverse weather (rain, snow, fog)"
EnvironmentalFactors --> "Direct sunlight glare"
EnvironmentalFactors --> "Reflective surfaces"
EnvironmentalFactors --> "Debris accumulation"

IntegrationIssues --> "Sensor fusion errors"
IntegrationIssues --> "Calibration drift"
IntegrationIssues --> "Data throughput limitations"
IntegrationIssues --> "V2X communication failure"

PerformanceDegradation --> "Range reduction"
PerformanceDegradation --> "Resolution decrease"
PerformanceDegradation --> "Increased noise in point cloud"
PerformanceDegradation --> "Slower scan rate"

note right of TopEvent
  Level 4 autonomy requires enhanced
  sensor suites and processing capabilities
  to handle complex urban environments
  and all-weather conditions. Some failures
  require multiple conditions (AND gates).
end note

@enduml
)puml";

struct Example {
  std::string_view name;
  std::string_view source;
};

inline constexpr std::array<Example, 3> kExamples{{
    {"lidar-initial", kLidarInitial},
    {"lidar-final", kLidarFinal},
    {"lidar-performance", kLidarPerformance},
}};

inline std::optional<std::string_view> find_example(std::string_view name) {
  for (const auto& e : kExamples) {
    if (e.name == name) return e.source;
  }
  return std::nullopt;
}

}  // namespace fta::bundled
