package demo.robots;

import java.util.LinkedHashSet;

public class HttpRobotRules {

    void setConf(Configuration conf) {
        String agentName = conf.get("http.agent.name");
        LinkedHashSet<String> agentNames = new LinkedHashSet<>();
        if (!agentName.equals("*")) {
            agentNames.add(agentName.toLowerCase());
        }
    }
}
