# 家庭车辆池

from typing import Dict, List, Sequence

from common.exceptions import SimulationError


class CarPool:
    """
    家庭车辆池：空闲车辆与 人员 -> 所持车辆

    空闲 + 在用 = 总数；每人最多持有一辆车
    """

    def __init__(self, household_id: int, car_ids: Sequence[int]):
        self.household_id = household_id
        self.total = len(car_ids)
        self._free: List[int] = list(car_ids)
        self._held: Dict[int, int] = {}
        self.takes = 0
        self.returns = 0

    @property
    def free_count(self) -> int:
        return len(self._free)

    @property
    def held_count(self) -> int:
        return len(self._held)

    def holds(self, person_id: int) -> bool:
        return person_id in self._held

    def take(self, person_id: int) -> int:
        """
        取出一辆空闲车辆

        Returns:
            int: 车辆ID
        """
        if person_id in self._held:
            raise SimulationError(f"person {person_id} already holds car {self._held[person_id]}")
        if not self._free:
            raise SimulationError(f"household {self.household_id} has no free car for person {person_id}")
        car_id = self._free.pop(0)
        self._held[person_id] = car_id
        self.takes += 1
        return car_id

    def give_back(self, person_id: int) -> int:
        try:
            car_id = self._held.pop(person_id)
        except KeyError:
            raise SimulationError(f"person {person_id} holds no car of household {self.household_id}") from None
        self._free.append(car_id)
        self._free.sort()
        self.returns += 1
        return car_id

    def check(self) -> None:
        if self.free_count + self.held_count != self.total or len(set(self._free)) != self.free_count:
            raise SimulationError(f"car pool of household {self.household_id} not conserved: "
                                  f"free {self.free_count}, held {self.held_count}, total {self.total}")
